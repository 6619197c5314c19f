#include "sedres/ensemble.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sedres/errors.hpp"
#include "sedres/parallel.hpp"
#include "sedres/rng.hpp"

namespace sedres {
namespace {

template <std::size_t K>
using Row = std::array<double, K>;

struct Jackknifed {
    double value;
    double se;
};

// Statistic of the ensemble means of K per-member quantities, with its
// leave-one-member-out jackknife standard error.
template <std::size_t K, typename Stat>
Jackknifed jackknife(const std::vector<Row<K>>& rows, Stat stat) {
    const std::size_t n = rows.size();
    Row<K> total{};
    for (const auto& r : rows)
        for (std::size_t k = 0; k < K; ++k) total[k] += r[k];
    Row<K> mean{};
    for (std::size_t k = 0; k < K; ++k) mean[k] = total[k] / static_cast<double>(n);
    const double value = stat(mean);
    if (n < 2) return {value, 0.0};

    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Row<K> m{};
        for (std::size_t k = 0; k < K; ++k) m[k] = (total[k] - rows[i][k]) / static_cast<double>(n - 1);
        loo[i] = stat(m);
        loo_mean += loo[i];
    }
    loo_mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    return {value, std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n))};
}

void check_members(const std::vector<Trajectory>& members) {
    if (members.empty()) throw std::invalid_argument("ensemble: empty trajectory list");
    const Trajectory& first = members.front();
    for (const auto& t : members) {
        if (t.x.size() < 2 || t.p.size() != t.x.size() || t.e_field.size() != t.x.size())
            throw std::invalid_argument("ensemble: trajectory series must have equal length >= 2");
        if (t.x.size() != first.x.size() || t.dt != first.dt || t.t0 != first.t0)
            throw std::invalid_argument("ensemble: trajectories do not share a time grid");
        if (!(t.params == first.params))
            throw std::invalid_argument("ensemble: trajectories do not share oscillator parameters");
    }
}

template <typename F>
double time_mean(const Trajectory& t, F f) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += f(i);
    return s / static_cast<double>(t.size());
}

} // namespace

EnsembleStats ensemble_statistics(const std::vector<Trajectory>& members) {
    check_members(members);
    // Per member: <x>, <p>, <x^2>, <p^2>, <H>.
    std::vector<Row<5>> rows(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        const Trajectory& t = members[m];
        double sx = 0, sp = 0, sxx = 0, spp = 0, se = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sx += t.x[i];
            sp += t.p[i];
            sxx += t.x[i] * t.x[i];
            spp += t.p[i] * t.p[i];
            se += t.energy(i);
        }
        const double n = static_cast<double>(t.size());
        rows[m] = {sx / n, sp / n, sxx / n, spp / n, se / n};
    }

    EnsembleStats s;
    s.n_members = members.size();
    auto put = [&](auto stat, double& value, double& se) {
        const auto r = jackknife(rows, stat);
        value = r.value;
        se = r.se;
    };
    auto var_x = [](const Row<5>& m) { return std::max(0.0, m[2] - m[0] * m[0]); };
    auto var_p = [](const Row<5>& m) { return std::max(0.0, m[3] - m[1] * m[1]); };
    put([](const Row<5>& m) { return m[0]; }, s.mean_x, s.se_mean_x);
    put([](const Row<5>& m) { return m[1]; }, s.mean_p, s.se_mean_p);
    put(var_x, s.var_x, s.se_var_x);
    put(var_p, s.var_p, s.se_var_p);
    put([](const Row<5>& m) { return m[4]; }, s.mean_energy, s.se_mean_energy);
    put([&](const Row<5>& m) { return std::sqrt(var_x(m) * var_p(m)); }, s.uncertainty_product,
        s.se_uncertainty_product);
    return s;
}

VarianceEstimates variance_x_estimators(const std::vector<Trajectory>& members, std::size_t n_probes) {
    check_members(members);
    if (members.size() < 2) throw std::invalid_argument("variance_x_estimators: need at least 2 members");
    const std::size_t len = members.front().size();
    n_probes = std::max<std::size_t>(1, std::min(n_probes, len));

    // Phase average: per member, the mean of x and x^2 over the probe times.
    std::vector<std::size_t> probes(n_probes);
    for (std::size_t j = 0; j < n_probes; ++j) probes[j] = j * (len - 1) / std::max<std::size_t>(1, n_probes - 1);
    if (n_probes == 1) probes[0] = len / 2;


    // The across-member variance at each probe, averaged over probes, is a
    // function of the per-member values x(t_j) and x(t_j)^2.
    const std::size_t n = members.size();
    std::vector<double> sum_x(n_probes, 0.0), sum_xx(n_probes, 0.0);
    for (const auto& t : members)
        for (std::size_t j = 0; j < n_probes; ++j) {
            sum_x[j] += t.x[probes[j]];
            sum_xx[j] += t.x[probes[j]] * t.x[probes[j]];
        }
    auto phase_var = [&](const std::vector<double>& sx, const std::vector<double>& sxx, double count) {
        double v = 0.0;
        for (std::size_t j = 0; j < n_probes; ++j) {
            const double mean = sx[j] / count;
            v += sxx[j] / count - mean * mean;
        }
        return v / static_cast<double>(n_probes);
    };
    VarianceEstimates out;
    out.phase_average = phase_var(sum_x, sum_xx, static_cast<double>(n));
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sx = sum_x, sxx = sum_xx;
        for (std::size_t j = 0; j < n_probes; ++j) {
            sx[j] -= members[i].x[probes[j]];
            sxx[j] -= members[i].x[probes[j]] * members[i].x[probes[j]];
        }
        loo[i] = phase_var(sx, sxx, static_cast<double>(n - 1));
        loo_mean += loo[i];
    }
    loo_mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    out.se_phase_average = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));

    const EnsembleStats s = ensemble_statistics(members);
    out.time_average = s.var_x;
    out.se_time_average = s.se_var_x;
    return out;
}

PowerBalance power_balance(const Trajectory& t) {
    if (t.x.size() < 2) throw std::invalid_argument("power_balance: trajectory too short");
    const double span = t.dt * static_cast<double>(t.size() - 1);
    if (span < 100.0 * two_pi / t.params.omega0)
        throw std::invalid_argument("power_balance: trajectory must span at least 100 periods");
    PowerBalance pb;
    pb.absorbed = t.params.e * time_mean(t, [&](std::size_t i) { return t.velocity(i) * t.e_field[i]; });
    pb.radiated = t.params.m * t.params.tau * time_mean(t, [&](std::size_t i) {
                      const double a = t.acceleration(i);
                      return a * a;
                  });
    pb.ratio_defined = pb.radiated > 0.0;
    pb.ratio = pb.ratio_defined ? pb.absorbed / pb.radiated : 0.0;
    return pb;
}

EnsemblePowerBalance power_balance(const std::vector<Trajectory>& members) {
    check_members(members);
    std::vector<Row<2>> rows(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        const PowerBalance pb = power_balance(members[m]);
        rows[m] = {pb.absorbed, pb.radiated};
    }
    EnsemblePowerBalance out;
    auto a = jackknife(rows, [](const Row<2>& r) { return r[0]; });
    auto r = jackknife(rows, [](const Row<2>& v) { return v[1]; });
    out.absorbed = a.value;
    out.se_absorbed = a.se;
    out.radiated = r.value;
    out.se_radiated = r.se;
    out.ratio_defined = out.radiated > 0.0;
    if (out.ratio_defined) {
        auto q = jackknife(rows, [](const Row<2>& v) { return v[1] > 0.0 ? v[0] / v[1] : 0.0; });
        out.ratio = q.value;
        out.se_ratio = q.se;
    }
    return out;
}

DiffusionEstimates diffusion_estimators(const std::vector<Trajectory>& members) {
    check_members(members);
    const double e = members.front().params.e;
    std::vector<Row<2>> rows(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        const Trajectory& t = members[m];
        rows[m] = {e * time_mean(t, [&](std::size_t i) { return t.x[i] * t.e_field[i]; }),
                   e * time_mean(t, [&](std::size_t i) { return t.p[i] * t.e_field[i]; })};
    }
    DiffusionEstimates d;
    const auto px = jackknife(rows, [](const Row<2>& r) { return r[0]; });
    const auto pp = jackknife(rows, [](const Row<2>& r) { return r[1]; });
    d.d_px = px.value;
    d.se_d_px = px.se;
    d.d_pp = pp.value;
    d.se_d_pp = pp.se;
    return d;
}

MeanEvolution mean_evolution_check(const std::vector<Trajectory>& members, Observable g) {
    check_members(members);
    const OscillatorParams& prm = members.front().params;
    const double m = prm.m;
    const double w0sq = prm.omega0 * prm.omega0;
    const double gamma = prm.damping();
    const double e = prm.e;

    auto value = [&](const Trajectory& t, std::size_t i) {
        switch (g) {
        case Observable::energy: return t.energy(i);
        case Observable::x_squared: return t.x[i] * t.x[i];
        case Observable::p_squared: return t.p[i] * t.p[i];
        }
        return 0.0;
    };
    // dG/dt = dG/dx p/m + dG/dp (-m w0^2 x) + dG/dp (-gamma p) + dG/dp e E.
    auto terms = [&](const Trajectory& t, std::size_t i) -> Row<3> {
        const double x = t.x[i], p = t.p[i], ef = t.e_field[i];
        switch (g) {
        case Observable::energy: {
            // {H, H} = 0: the conservative part drops out identically.
            const double dgdp = p / m;
            return {0.0, -dgdp * gamma * p, dgdp * e * ef};
        }
        case Observable::x_squared: return {2.0 * x * p / m, 0.0, 0.0};
        case Observable::p_squared: return {-2.0 * p * m * w0sq * x, -2.0 * gamma * p * p, 2.0 * p * e * ef};
        }
        return {0.0, 0.0, 0.0};
    };

    // Per member: lhs, the three rhs terms (trapezoid time averages), residual.
    std::vector<Row<5>> rows(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const Trajectory& t = members[k];
        const std::size_t n = t.size();
        const double span = t.dt * static_cast<double>(n - 1);
        Row<3> acc{};
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            const Row<3> r = terms(t, i);
            for (std::size_t j = 0; j < 3; ++j) acc[j] += w * r[j];
        }
        for (auto& a : acc) a /= static_cast<double>(n - 1);
        const double lhs = (value(t, n - 1) - value(t, 0)) / span;
        rows[k] = {lhs, acc[0], acc[1], acc[2], lhs - (acc[0] + acc[1] + acc[2])};
    }
    MeanEvolution out;
    const auto lhs = jackknife(rows, [](const Row<5>& r) { return r[0]; });
    const auto res = jackknife(rows, [](const Row<5>& r) { return r[4]; });
    out.lhs = lhs.value;
    out.se_lhs = lhs.se;
    out.residual = res.value;
    out.se_residual = res.se;
    Row<5> mean{};
    for (const auto& r : rows)
        for (std::size_t j = 0; j < 5; ++j) mean[j] += r[j] / static_cast<double>(rows.size());
    out.non_radiative = mean[1];
    out.radiative = mean[2];
    out.field = mean[3];
    out.rhs = mean[1] + mean[2] + mean[3];
    return out;
}

std::vector<Trajectory> run_ensemble(const EnsembleRun& run) {
    if (run.n_members == 0) throw std::invalid_argument("ensemble.n_members must be positive");
    run.params.validate();
    run.band.validate();
    run.units.validate();
    std::vector<Trajectory> out(run.n_members);
    parallel_for(run.n_members, [&](std::size_t i) {
        const FieldRealization field = sample_realization(run.band, run.units, member_seed(run.master_seed, i));
        try {
            if (run.path == SimulationPath::spectral)
                out[i] = steady_state_spectral(run.params, field, run.grid);
            else
                out[i] = integrate_time_domain(run.params, field, run.integration);
        } catch (const IntegrationError& err) {
            throw IntegrationError("ensemble member " + std::to_string(i) + ": " + err.what(), err.dt());
        }
    });
    return out;
}

} // namespace sedres
