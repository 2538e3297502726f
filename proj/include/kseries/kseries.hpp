#pragma once

#include "kseries/errors.hpp"
#include "kseries/frac_calculus.hpp"
#include "kseries/mcdonald_series.hpp"
#include "kseries/oracle.hpp"
#include "kseries/quadrature.hpp"
#include "kseries/series.hpp"
#include "kseries/special.hpp"
#include "kseries/verification_suite.hpp"
#include "kseries/vk_polynomials.hpp"
