#pragma once

#include "hcat/error.hpp"
#include "hcat/field.hpp"
#include "hcat/matrix.hpp"
#include "hcat/algebra.hpp"
#include "hcat/module.hpp"
#include "hcat/hom.hpp"
#include "hcat/complex.hpp"
#include "hcat/hom_complex.hpp"
#include "hcat/resolution.hpp"
#include "hcat/derived.hpp"
#include "hcat/verifiers.hpp"
#include "hcat/catalog.hpp"
#include "hcat/io.hpp"
