#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qseries {

/* Exact signed integers of arbitrary size. Signed representation counts
 * roughly double per step, so fixed-width types overflow long before the
 * ranges swept here. */
using Int = boost::multiprecision::cpp_int;

}  // namespace qseries
