#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sedres {

// Tracks z_a(t_k) = c_a exp(i w_a t_k) on the grid t_k = t0 + k h by complex
// rotation, re-anchoring to exact cos/sin every `resync` steps so rounding
// does not accumulate. Sums are taken in a fixed order (deterministic).
class PhasorBank {
public:
    PhasorBank(std::span<const double> omega, std::span<const std::complex<double>> coeff, double t0,
               double h, std::size_t resync = 4096);

    std::size_t size() const { return omega_.size(); }
    std::size_t step() const { return step_; }
    double time() const { return t0_ + static_cast<double>(step_) * h_; }

    // Sum_a Re z_a.
    double real_sum() const;

    // Sum_a Re z_a, Sum_a Re(w1_a z_a), Sum_a Re(w2_a z_a) in one pass.
    void real_sums(const std::vector<double>& w1_re, const std::vector<double>& w1_im,
                   const std::vector<double>& w2_re, const std::vector<double>& w2_im, double& s0,
                   double& s1, double& s2) const;

    void advance();

private:
    void anchor();

    std::vector<double> omega_;
    std::vector<double> c_re_, c_im_;
    std::vector<double> z_re_, z_im_;
    std::vector<double> r_re_, r_im_;
    double t0_;
    double h_;
    std::size_t resync_;
    std::size_t step_ = 0;
};

} // namespace sedres
