#include "sedres/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "sedres/errors.hpp"
#include "sedres/fft.hpp"

namespace sedres {
namespace {

std::vector<double> hann(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) / static_cast<double>(n));
    return w;
}

std::size_t segment_step(const WelchOptions& o) {
    const auto step = static_cast<std::size_t>(std::llround(static_cast<double>(o.segment_length) * (1.0 - o.overlap)));
    return std::max<std::size_t>(step, 1);
}

// Sum_k c_k P_k exp(2 pi i k s / L) for s in [0, L): real part is the even
// inverse transform, imaginary part the odd one (c_k = 1 at DC and Nyquist).
std::vector<std::complex<double>> one_sided_inverse(const std::vector<double>& power, std::size_t l) {
    std::vector<std::complex<double>> buf(l, 0.0);
    for (std::size_t k = 0; k < power.size(); ++k) buf[k] = power[k];
    return fft::backward(buf);
}

} // namespace

double SpectrumEstimate::integral() const {
    double s = 0.0;
    for (double v : S) s += v;
    return s * d_omega;
}

SpectrumEstimate welch_psd(const std::vector<std::vector<double>>& series, double dt, const WelchOptions& o) {
    const std::size_t l = o.segment_length;
    if (l < 8 || l % 2 != 0) throw std::invalid_argument("welch_psd: segment length must be even and >= 8");
    if (!(o.overlap >= 0.0 && o.overlap < 1.0)) throw std::invalid_argument("welch_psd: overlap must lie in [0, 1)");
    if (!(dt > 0.0)) throw std::invalid_argument("welch_psd: dt must be positive");
    if (series.empty()) throw std::invalid_argument("welch_psd: no data");

    const auto w = hann(l);
    double w2 = 0.0;
    for (double v : w) w2 += v * v;
    const std::size_t step = segment_step(o);

    SpectrumEstimate out;
    out.segment_length = l;
    out.overlap = o.overlap;
    out.n_members = series.size();
    out.d_omega = two_pi / (static_cast<double>(l) * dt);
    out.omega.resize(l / 2 + 1);
    for (std::size_t k = 0; k <= l / 2; ++k) out.omega[k] = static_cast<double>(k) * out.d_omega;
    out.S.assign(l / 2 + 1, 0.0);

    std::vector<double> seg(l);
    for (const auto& x : series) {
        if (x.size() < l) throw std::invalid_argument("welch_psd: series shorter than one segment");
        for (std::size_t start = 0; start + l <= x.size(); start += step) {
            double mean = 0.0;
            if (o.remove_segment_mean) {
                for (std::size_t i = 0; i < l; ++i) mean += x[start + i];
                mean /= static_cast<double>(l);
            }
            for (std::size_t i = 0; i < l; ++i) seg[i] = (x[start + i] - mean) * w[i];
            const auto spec = fft::forward_real(seg);
            for (std::size_t k = 0; k <= l / 2; ++k) out.S[k] += std::norm(spec[k]);
            ++out.n_segments;
        }
    }
    const double norm = dt / (two_pi * w2 * static_cast<double>(out.n_segments));
    for (std::size_t k = 0; k <= l / 2; ++k) out.S[k] *= (k == 0 || k == l / 2 ? 1.0 : 2.0) * norm;
    return out;
}

LineShape line_shape(const SpectrumEstimate& s) {
    if (s.S.size() < 3) throw std::invalid_argument("line_shape: spectrum too short");
    LineShape ls;
    ls.peak_index = static_cast<std::size_t>(std::max_element(s.S.begin(), s.S.end()) - s.S.begin());
    ls.peak_omega = s.omega[ls.peak_index];
    ls.peak_value = s.S[ls.peak_index];
    const double half = 0.5 * ls.peak_value;
    std::size_t i = ls.peak_index;
    while (i > 0 && s.S[i - 1] > half) --i;
    if (i == 0) throw std::invalid_argument("line_shape: no half-power crossing below the peak");
    const double left = s.omega[i - 1] + (half - s.S[i - 1]) / (s.S[i] - s.S[i - 1]) * s.d_omega;
    std::size_t j = ls.peak_index;
    while (j + 1 < s.S.size() && s.S[j + 1] > half) ++j;
    if (j + 1 == s.S.size()) throw std::invalid_argument("line_shape: no half-power crossing above the peak");
    const double right = s.omega[j] + (s.S[j] - half) / (s.S[j] - s.S[j + 1]) * s.d_omega;
    ls.fwhm = right - left;
    ls.center_omega = 0.5 * (left + right);
    return ls;
}

void check_stationarity(const std::vector<Trajectory>& members, double sigmas) {
    if (members.size() < 2) throw std::invalid_argument("check_stationarity: need at least 2 members");
    const std::size_t n = members.size();
    // Per member: difference between the last and first quarter of <x> and <x^2>.
    std::vector<double> dx(n), dxx(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto& x = members[m].x;
        const std::size_t q = x.size() / 4;
        if (q == 0) throw std::invalid_argument("check_stationarity: series too short");
        double a = 0, aa = 0, b = 0, bb = 0;
        for (std::size_t i = 0; i < q; ++i) {
            a += x[i];
            aa += x[i] * x[i];
            b += x[x.size() - q + i];
            bb += x[x.size() - q + i] * x[x.size() - q + i];
        }
        dx[m] = (b - a) / static_cast<double>(q);
        dxx[m] = (bb - aa) / static_cast<double>(q);
    }
    auto z_score = [n](const std::vector<double>& d) {
        double mean = 0, ss = 0;
        for (double v : d) mean += v;
        mean /= static_cast<double>(n);
        for (double v : d) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
        return se > 0.0 ? mean / se : (mean == 0.0 ? 0.0 : INFINITY);
    };
    const double zx = z_score(dx), zxx = z_score(dxx);
    if (std::abs(zx) > sigmas || std::abs(zxx) > sigmas) {
        std::ostringstream msg;
        msg << "ensemble is not stationary: drift between first and last quarter is " << zx << " sigma in <x> and "
            << zxx << " sigma in <x^2>";
        throw StationarityError(msg.str());
    }
}

SpectrumDecomposition spectrum_decompose(const std::vector<Trajectory>& members, const NaturalUnits& units,
                                         const WelchOptions& options, std::size_t max_lag, std::size_t min_members) {
    if (members.size() < min_members) {
        std::ostringstream msg;
        msg << "spectrum_decompose: need at least " << min_members << " members, got " << members.size();
        throw std::invalid_argument(msg.str());
    }
    const std::size_t l = options.segment_length;
    if (max_lag == 0 || 4 * max_lag > l) throw std::invalid_argument("spectrum_decompose: max_lag must be in (0, L/4]");
    const double dt = members.front().dt;
    for (const auto& t : members)
        if (t.dt != dt || t.size() != members.front().size())
            throw std::invalid_argument("spectrum_decompose: members do not share a time grid");
    check_stationarity(members);

    SpectrumDecomposition out;
    std::vector<std::vector<double>> xs;
    xs.reserve(members.size());
    double sum = 0, sum2 = 0, count = 0;
    for (const auto& t : members) {
        xs.push_back(t.x);
        for (double v : t.x) {
            sum += v;
            sum2 += v * v;
        }
        count += static_cast<double>(t.size());
    }
    out.var_x = sum2 / count - (sum / count) * (sum / count);
    out.spectrum = welch_psd(xs, dt, options);

    // Expected value of the inverse transform is the true covariance times the
    // normalized autocorrelation of the window.
    const auto w = hann(l);
    std::vector<std::complex<double>> wc(2 * l, 0.0);
    for (std::size_t i = 0; i < l; ++i) wc[i] = w[i];
    const auto wf = fft::forward(wc);
    std::vector<std::complex<double>> wp(2 * l);
    for (std::size_t k = 0; k < 2 * l; ++k) wp[k] = std::norm(wf[k]);
    const auto wcorr = fft::backward(wp);

    std::vector<double> power(out.spectrum.S.size());
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = out.spectrum.S[k] * out.spectrum.d_omega;
    const auto inv = one_sided_inverse(power, l);

    // Direct covariance per member through zero-padded FFT, averaged.
    const std::size_t n = members.front().size();
    std::size_t pad = 1;
    while (pad < 2 * n) pad <<= 1;
    std::vector<double> direct(max_lag + 1, 0.0);
    for (const auto& x : xs) {
        std::vector<std::complex<double>> buf(pad, 0.0);
        for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
        auto f = fft::forward(buf);
        for (auto& v : f) v = std::norm(v);
        const auto ac = fft::backward(f);
        for (std::size_t s = 0; s <= max_lag; ++s)
            direct[s] += ac[s].real() / static_cast<double>(pad) / static_cast<double>(n - s);
    }
    for (auto& v : direct) v /= static_cast<double>(members.size());

    const OscillatorParams& prm = members.front().params;
    const double gamma = prm.damping();
    const double wd = std::sqrt(std::max(prm.omega0 * prm.omega0 - 0.25 * gamma * gamma, 0.0));
    auto chi = [&](double s) { return s > 0.0 ? std::exp(-0.5 * gamma * s) * std::sin(wd * s) / wd : 0.0; };

    double sym_num = 0, sym_den = 0, anti_num = 0, anti_den = 0;
    for (long s = -static_cast<long>(max_lag); s <= static_cast<long>(max_lag); ++s) {
        const std::size_t a = static_cast<std::size_t>(std::labs(s));
        const double window = wcorr[a].real() / wcorr[0].real();
        const std::complex<double> v = inv[a] / window;
        const double lag = static_cast<double>(s) * dt;
        const double sym = v.real();
        const double anti = s >= 0 ? v.imag() : -v.imag();
        const double ref = units.hbar / (2.0 * prm.m) * (chi(lag) - chi(-lag));
        out.lag.push_back(lag);
        out.symmetric.push_back(sym);
        out.antisymmetric.push_back(anti);
        out.direct.push_back(direct[a]);
        out.response_reference.push_back(ref);
        sym_num += (sym - direct[a]) * (sym - direct[a]);
        sym_den += direct[a] * direct[a];
        anti_num += (anti - ref) * (anti - ref);
        anti_den += ref * ref;
    }
    out.symmetric_rms_deviation = std::sqrt(sym_num / sym_den);
    out.antisymmetric_rms_deviation = anti_den > 0.0 ? std::sqrt(anti_num / anti_den) : 0.0;
    return out;
}

} // namespace sedres
