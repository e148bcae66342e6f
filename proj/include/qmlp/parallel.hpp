#pragma once

#include <cstddef>

namespace qmlp {

// Work-size gate for OpenMP loops. An `if` clause on the pragma still enters
// the runtime for a serialized team, which costs microseconds per call and
// dominates the tiny circuits used in training; branching to a plain loop
// keeps small cases allocation- and runtime-free. Both branches run the same
// body per index, so results do not depend on the path taken.
template <typename Body>
inline void indexed_loop(std::size_t count, std::size_t parallel_threshold, Body&& body) {
  if (count >= parallel_threshold) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

// Dynamic schedule variant for uneven per-item work.
template <typename Body>
inline void indexed_loop_dynamic(std::size_t count, std::size_t parallel_threshold, Body&& body) {
  if (count >= parallel_threshold) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace qmlp
