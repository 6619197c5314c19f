#include "sedres/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sedres/report.hpp"

namespace sedres {

namespace {

using json = nlohmann::ordered_json;

json complex_rows(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = "t,x,p,E\n";
    out.reserve(out.size() + tr.size() * 64);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out += format_double(tr.time(i));
        out += ',';
        out += format_double(tr.x[i]);
        out += ',';
        out += format_double(tr.p[i]);
        out += ',';
        out += format_double(tr.energy(i));
        out += '\n';
    }
    return out;
}

std::string stats_json(const EnsembleStats& s) {
    json j;
    j["n_members"] = s.n_members;
    j["mean_x"] = s.mean_x;
    j["mean_p"] = s.mean_p;
    j["var_x"] = s.var_x;
    j["var_p"] = s.var_p;
    j["mean_energy"] = s.mean_energy;
    j["uncertainty_product"] = s.uncertainty_product;
    j["se_mean_x"] = s.se_mean_x;
    j["se_mean_p"] = s.se_mean_p;
    j["se_var_x"] = s.se_var_x;
    j["se_var_p"] = s.se_var_p;
    j["se_mean_energy"] = s.se_mean_energy;
    j["se_uncertainty_product"] = s.se_uncertainty_product;
    return j.dump(2) + "\n";
}

std::string realization_json(const FieldRealization& f) {
    json j;
    j["seed"] = f.seed;
    j["omega"] = f.frequencies;
    j["amplitude"] = f.amplitudes;
    j["phase"] = f.phases;
    return j.dump() + "\n";
}

std::string response_matrix_json(const ResponseMatrix& m) {
    json j;
    j["n_max"] = m.n_max;
    j["X"] = complex_rows(m.X);
    j["P"] = complex_rows(m.P);
    json omega = json::array();
    for (Eigen::Index i = 0; i < m.omega.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.omega.cols(); ++k) row.push_back(m.omega(i, k));
        omega.push_back(std::move(row));
    }
    j["omega"] = std::move(omega);
    return j.dump() + "\n";
}

std::string susceptibility_csv(const Susceptibility& s) {
    std::string out = "omega,re,im\n";
    for (std::size_t i = 0; i < s.omega.size(); ++i)
        out += format_double(s.omega[i]) + ',' + format_double(s.values[i].real()) + ',' +
               format_double(s.values[i].imag()) + '\n';
    return out;
}

std::string spectrum_csv(const SpectrumEstimate& s) {
    std::string out = "omega,S\n";
    for (std::size_t i = 0; i < s.omega.size(); ++i)
        out += format_double(s.omega[i]) + ',' + format_double(s.S[i]) + '\n';
    return out;
}

std::string response_function_csv(const ResponseFunction& r) {
    std::string out = "t,chi\n";
    for (std::size_t i = 0; i < r.t.size(); ++i) out += format_double(r.t[i]) + ',' + format_double(r.chi[i]) + '\n';
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

} // namespace sedres
