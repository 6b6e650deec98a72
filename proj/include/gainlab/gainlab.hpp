#pragma once

#include "gainlab/bigmath.hpp"
#include "gainlab/corpus.hpp"
#include "gainlab/factor.hpp"
#include "gainlab/gains.hpp"
#include "gainlab/report.hpp"
#include "gainlab/search.hpp"
