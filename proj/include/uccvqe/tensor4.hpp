#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace uccvqe {

/// Dense rank-4 tensor with equal extents, row-major in (p, q, r, s).
template <typename Scalar>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, Scalar(0)) {}

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  Scalar& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    assert(p < n_ && q < n_ && r < n_ && s < n_);
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  const Scalar& operator()(std::size_t p, std::size_t q, std::size_t r,
                           std::size_t s) const {
    assert(p < n_ && q < n_ && r < n_ && s < n_);
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }

  Scalar* data() noexcept { return data_.data(); }
  const Scalar* data() const noexcept { return data_.data(); }

  // Assigns v to all eight index permutations that leave a real chemist
  // (pq|rs) integral invariant.
  void set_chemist_symmetric(std::size_t p, std::size_t q, std::size_t r,
                             std::size_t s, Scalar v) {
    (*this)(p, q, r, s) = v;
    (*this)(q, p, r, s) = v;
    (*this)(p, q, s, r) = v;
    (*this)(q, p, s, r) = v;
    (*this)(r, s, p, q) = v;
    (*this)(s, r, p, q) = v;
    (*this)(r, s, q, p) = v;
    (*this)(s, r, q, p) = v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> data_;
};

using Eri = Tensor4<double>;

}  // namespace uccvqe
