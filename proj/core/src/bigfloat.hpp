#pragma once

#include <mpfr.h>

namespace adtrw::detail {

/// Owning mpfr_t with a fixed precision chosen at construction.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits, double value = 0.0);
  BigFloat(const BigFloat& other);
  BigFloat& operator=(const BigFloat& other);
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

}  // namespace adtrw::detail
