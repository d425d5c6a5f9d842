#ifndef DPL_PARALLEL_HPP
#define DPL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace dpl {

// global worker count used by parallel_for; 0 resets to hardware concurrency
void set_thread_count(size_t n);
size_t thread_count();

// static block partition of [0,n); results must not depend on scheduling
void parallel_for(size_t n, const std::function<void(size_t)>& body);

} // namespace dpl

#endif
