#ifndef ZETALAB_KAHAN_HPP
#define ZETALAB_KAHAN_HPP

#include <complex>

namespace zetalab {

// Kahan-Neumaier compensated accumulator.  The integrals over [0,T] with
// step a/5 run to ~10^7 terms of mixed magnitude; naive summation loses
// 3-4 digits there, compensation keeps the error at a few ulps.
class KahanSum {
public:
    KahanSum() = default;
    explicit KahanSum(double init) : sum_(init) {}

    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    KahanSum& operator+=(double x) { add(x); return *this; }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumComplex {
public:
    void add(std::complex<double> z) { re_.add(z.real()); im_.add(z.imag()); }
    KahanSumComplex& operator+=(std::complex<double> z) { add(z); return *this; }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

} // namespace zetalab

#endif
