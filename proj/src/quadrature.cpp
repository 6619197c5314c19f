#include "sedres/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "sedres/errors.hpp"

namespace sedres::quad {
namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr double xgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                            0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                            0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                            0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                            0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                            0.0};
constexpr double wgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                            0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                            0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                            0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                            0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                            0.149445554002916905664936468389821};
constexpr double wg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                          0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                          0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double res_k = wgk[10] * fc;
    double res_g = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        res_k += wgk[j] * fsum;
        // Gauss nodes sit at odd indices of the Kronrod abscissae.
        if (j % 2 == 1) res_g += wg[j / 2] * fsum;
    }
    const double value = res_k * half;
    double err = std::abs((res_k - res_g) * half);
    if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
    return {a, b, value, err};
}

} // namespace

Result integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 const Options& opts) {
    if (!(b > a)) {
        if (a == b) return {};
        auto r = integrate(f, b, a, breakpoints, opts);
        r.value = -r.value;
        return r;
    }
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gauss_kronrod(f, cuts[i], cuts[i + 1]);
        evals += 21;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (total_err > target()) {
        if (heap.size() >= opts.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge on [" << a << ", " << b << "]: estimate "
                << total << ", error " << total_err << " > target " << target() << " after "
                << heap.size() << " intervals (" << evals << " evaluations)";
            throw NumericalError(msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NumericalError("adaptive quadrature: interval collapsed to machine precision near " +
                                 std::to_string(worst.a));
        }
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        evals += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the segments to shed accumulated cancellation in `total`.
    Result out;
    out.intervals = heap.size();
    out.evaluations = evals;
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    for (const auto& s : segs) {
        out.value += s.value;
        out.abs_error += s.error;
    }
    return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
    return integrate(f, a, b, std::span<const double>{}, opts);
}

Result integrate_to_infinity(const Integrand& f, double a, std::span<const double> breakpoints,
                             const Options& opts) {
    auto mapped = [&](double s) {
        if (s >= 1.0) return 0.0;
        const double one_minus = 1.0 - s;
        const double x = a + s / one_minus;
        return f(x) / (one_minus * one_minus);
    };
    std::vector<double> sb;
    for (double p : breakpoints)
        if (p > a) sb.push_back((p - a) / (1.0 + (p - a)));
    return integrate(mapped, 0.0, 1.0, sb, opts);
}

} // namespace sedres::quad
