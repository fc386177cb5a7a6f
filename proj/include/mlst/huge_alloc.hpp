#pragma once

#include <cstddef>
#include <cstdint>
#include <new>

#if defined(__linux__)
#include <sys/mman.h>
#endif

namespace mlst {

// std::vector allocator that asks the kernel to back large blocks with huge
// pages. The tree pools are tens of megabytes probed at random, so TLB
// coverage, not capacity, is what runs out; 2 MB pages keep the whole pool
// mapped. A hint only: unsupported platforms and small blocks are plain
// allocations.
template <class T>
struct HugePageAllocator {
  using value_type = T;

  HugePageAllocator() = default;
  template <class U>
  HugePageAllocator(const HugePageAllocator<U>&) {}

  T* allocate(std::size_t n) {
    void* p = ::operator new(n * sizeof(T));
#if defined(__linux__) && defined(MADV_HUGEPAGE)
    constexpr std::uintptr_t page = 4096;
    const std::size_t bytes = n * sizeof(T);
    if (bytes >= (std::size_t(4) << 20)) {
      std::uintptr_t a = (reinterpret_cast<std::uintptr_t>(p) + page - 1) & ~(page - 1);
      std::uintptr_t b = (reinterpret_cast<std::uintptr_t>(p) + bytes) & ~(page - 1);
      if (b > a) madvise(reinterpret_cast<void*>(a), b - a, MADV_HUGEPAGE);
    }
#endif
    return static_cast<T*>(p);
  }

  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p); }

  friend bool operator==(const HugePageAllocator&, const HugePageAllocator&) { return true; }
};

}  // namespace mlst
