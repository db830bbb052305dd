#include "nctheta/quiver.hpp"

#include <sstream>

#include <json.hpp>

namespace nct {

std::vector<IntSymMatrix> enumerate_diag_symmetric(std::int64_t det_target, std::int64_t bound) {
    std::vector<IntSymMatrix> out;
    for (std::int64_t d0 = -bound; d0 <= bound; ++d0)
        for (std::int64_t d1 = -bound; d1 <= bound; ++d1)
            if (d0 * d1 == det_target) out.push_back(IntSymMatrix::diag({d0, d1}));
    return out;
}

IntSymMatrix conjugate(const IntSymMatrix& a, const IMat& g) {
    if (g.rows() != a.n() || g.cols() != a.n()) throw dimension_mismatch();
    std::int64_t dg = det_exact(g);
    if (dg != 1 && dg != -1) throw not_unimodular();
    return IntSymMatrix(IMat(g.transpose() * a.mat() * g));
}

int hom_dim(const IntSymMatrix& a_a, const IntSymMatrix& a_b) {
    return hom_space(a_a, a_b).dimension;
}

Quiver build_quiver(const std::vector<IntSymMatrix>& labels) {
    Quiver q;
    q.nodes = labels;
    const int n = static_cast<int>(labels.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            int w = hom_dim(labels[a], labels[b]);
            if (w > 0) q.arrows.push_back({a, b, w});
        }
    return q;
}

namespace {

std::string matrix_label(const IntSymMatrix& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.n(); ++i) {
        if (i) os << ",";
        os << "[";
        for (int j = 0; j < a.n(); ++j) {
            if (j) os << ",";
            os << a.mat()(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace

std::string quiver_to_dot(const Quiver& q) {
    std::ostringstream os;
    os << "digraph hom_quiver {\n";
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << matrix_label(q.nodes[i]) << "\"];\n";
    for (const auto& e : q.arrows)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.weight << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& a : q.nodes) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < a.n(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < a.n(); ++k) row.push_back(a.mat()(i, k));
            rows.push_back(row);
        }
        j["nodes"].push_back(rows);
    }
    j["arrows"] = nlohmann::json::array();
    for (const auto& e : q.arrows)
        j["arrows"].push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
    return j.dump(2) + "\n";
}

}  // namespace nct
