#include "sedres/phasor_bank.hpp"

#include <cmath>
#include <stdexcept>

namespace sedres {

PhasorBank::PhasorBank(std::span<const double> omega, std::span<const std::complex<double>> coeff,
                       double t0, double h, std::size_t resync)
    : omega_(omega.begin(), omega.end()), t0_(t0), h_(h), resync_(resync == 0 ? 1 : resync) {
    if (omega.size() != coeff.size()) throw std::invalid_argument("PhasorBank: size mismatch");
    const std::size_t n = omega.size();
    c_re_.resize(n);
    c_im_.resize(n);
    z_re_.resize(n);
    z_im_.resize(n);
    r_re_.resize(n);
    r_im_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        c_re_[a] = coeff[a].real();
        c_im_[a] = coeff[a].imag();
        r_re_[a] = std::cos(omega_[a] * h_);
        r_im_[a] = std::sin(omega_[a] * h_);
    }
    anchor();
}

void PhasorBank::anchor() {
    const double t = time();
    for (std::size_t a = 0; a < omega_.size(); ++a) {
        const double ph = omega_[a] * t;
        const double cr = std::cos(ph);
        const double ci = std::sin(ph);
        z_re_[a] = c_re_[a] * cr - c_im_[a] * ci;
        z_im_[a] = c_re_[a] * ci + c_im_[a] * cr;
    }
}

double PhasorBank::real_sum() const {
    const std::size_t n = z_re_.size();
    const double* zr = z_re_.data();
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t a = 0; a < n; ++a) s += zr[a];
    return s;
}

void PhasorBank::real_sums(const std::vector<double>& w1_re, const std::vector<double>& w1_im,
                           const std::vector<double>& w2_re, const std::vector<double>& w2_im,
                           double& s0, double& s1, double& s2) const {
    const std::size_t n = z_re_.size();
    const double* zr = z_re_.data();
    const double* zi = z_im_.data();
    const double* ar = w1_re.data();
    const double* ai = w1_im.data();
    const double* br = w2_re.data();
    const double* bi = w2_im.data();
    double t0 = 0.0, t1 = 0.0, t2 = 0.0;
#pragma omp simd reduction(+ : t0, t1, t2)
    for (std::size_t a = 0; a < n; ++a) {
        t0 += zr[a];
        t1 += ar[a] * zr[a] - ai[a] * zi[a];
        t2 += br[a] * zr[a] - bi[a] * zi[a];
    }
    s0 = t0;
    s1 = t1;
    s2 = t2;
}

void PhasorBank::advance() {
    ++step_;
    if (step_ % resync_ == 0) {
        anchor();
        return;
    }
    const std::size_t n = z_re_.size();
    double* zr = z_re_.data();
    double* zi = z_im_.data();
    const double* rr = r_re_.data();
    const double* ri = r_im_.data();
#pragma omp simd
    for (std::size_t a = 0; a < n; ++a) {
        const double re = zr[a] * rr[a] - zi[a] * ri[a];
        const double im = zr[a] * ri[a] + zi[a] * rr[a];
        zr[a] = re;
        zi[a] = im;
    }
}

} // namespace sedres
