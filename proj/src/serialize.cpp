#include "nctheta/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace nct {

using nlohmann::json;

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

namespace {

cplx entry_to_complex(const json& e) {
    if (e.is_number()) return cplx(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return cplx(e[0].get<double>(), e[1].get<double>());
    throw std::invalid_argument("expected a number or an [re, im] pair");
}

}  // namespace

IntSymMatrix parse_int_sym(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty JSON array");
    if (j[0].is_number()) {
        IMat m = IMat::Zero(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) m(i, i) = j[i].get<std::int64_t>();
        return IntSymMatrix(m);
    }
    const std::size_t n = j.size();
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw std::invalid_argument("matrix rows must all have the same length");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<std::int64_t>();
    }
    return IntSymMatrix(m);
}

IVec parse_int_vec(const std::string& text, int n) {
    IVec v(n);
    std::istringstream is(text);
    std::string tok;
    int i = 0;
    while (std::getline(is, tok, ',')) {
        if (i >= n) throw std::invalid_argument("too many vector entries");
        v[i++] = std::stoll(tok);
    }
    if (i != n) throw std::invalid_argument("wrong vector length");
    return v;
}

CVec parse_complex_vec(const std::string& text, int n) {
    json j = json::parse(text);
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw std::invalid_argument("expected a JSON array of length n");
    CVec v(n);
    for (int i = 0; i < n; ++i) v[i] = entry_to_complex(j[i]);
    return v;
}

CMat parse_complex_mat(const std::string& text, int n) {
    json j = json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("expected a JSON matrix");
    CMat m(n, n);
    if (n == 1 && j.size() == 1 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_number()) {
        m(0, 0) = entry_to_complex(j[0]);
        return m;
    }
    if (static_cast<int>(j.size()) != n) throw std::invalid_argument("wrong matrix size");
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
            throw std::invalid_argument("wrong matrix row length");
        for (int k = 0; k < n; ++k) m(i, k) = entry_to_complex(j[i][k]);
    }
    return m;
}

namespace {

std::string rep_key(const CosetIndex& c) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < c.rep().size(); ++i) {
        if (i) os << ",";
        os << c.rep()[i];
    }
    return os.str();
}

}  // namespace

json tensor_to_json(const StructureTensor& t) {
    json entries = json::object();
    for (std::size_t im = 0; im < t.mu_reps.size(); ++im)
        for (std::size_t in = 0; in < t.nu_reps.size(); ++in)
            for (std::size_t ir = 0; ir < t.rho_reps.size(); ++ir) {
                std::string key = rep_key(t.mu_reps[im]) + "|" + rep_key(t.nu_reps[in]) + "|" +
                                  rep_key(t.rho_reps[ir]);
                entries[key] = complex_to_json(
                    t.at(static_cast<int>(im), static_cast<int>(in), static_cast<int>(ir)));
            }
    json j;
    j["dims"] = {t.mu_reps.size(), t.nu_reps.size(), t.rho_reps.size()};
    j["entries"] = entries;
    return j;
}

}  // namespace nct
