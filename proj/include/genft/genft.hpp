#pragma once

#include "genft/config.hpp"
#include "genft/corpus.hpp"
#include "genft/errors.hpp"
#include "genft/fka1d.hpp"
#include "genft/gmclass.hpp"
#include "genft/kernel1d.hpp"
#include "genft/parallel.hpp"
#include "genft/pitt.hpp"
#include "genft/quadrature.hpp"
#include "genft/report.hpp"
#include "genft/specfun.hpp"
#include "genft/suite.hpp"
#include "genft/test_function.hpp"
#include "genft/transform.hpp"
#include "genft/uncertainty.hpp"
