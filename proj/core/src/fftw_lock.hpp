#pragma once

#include <mutex>

namespace lcft::fields {

/// FFTW's planner is not thread-safe; every plan creation and destruction
/// goes through this mutex. Plan execution with the new-array interface is.
std::mutex& fftw_planner_mutex();

}  // namespace lcft::fields
