#pragma once

// Everything: words, base codes, builders, iterative generators, checks.

#include "sigmak/word.hpp"
#include "sigmak/base_codes.hpp"
#include "sigmak/builders.hpp"
#include "sigmak/engine.hpp"
#include "sigmak/verify.hpp"
