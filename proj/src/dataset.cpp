#include "grex/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "grex/graph6.hpp"

namespace grex {

using nlohmann::json;

void write_dataset(const std::string& prefix, const std::vector<GraphPair>& pairs) {
    {
        std::ofstream out(prefix + ".g6");
        if (!out) throw std::runtime_error("cannot write " + prefix + ".g6");
        for (const auto& p : pairs) out << write_graph6(p.g) << '\n' << write_graph6(p.h) << '\n';
    }
    json side = json::array();
    for (const auto& p : pairs) {
        side.push_back({{"pair_id", p.pair_id},
                        {"category", p.category},
                        {"subcategory", p.subcategory},
                        {"wl_difficulty", p.wl_difficulty},
                        {"audit",
                         {{"wl1_indistinguishable", p.audit.wl1_indistinguishable},
                          {"non_isomorphic", p.audit.non_isomorphic}}}});
    }
    std::ofstream out(prefix + ".json");
    if (!out) throw std::runtime_error("cannot write " + prefix + ".json");
    out << side.dump(2) << '\n';
}

std::vector<GraphPair> read_dataset(const std::string& pair_path,
                                    const std::string& sidecar_path) {
    auto raw = read_pair_file(pair_path);
    std::vector<GraphPair> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        GraphPair p;
        p.pair_id = "pair_" + std::to_string(i + 1);
        p.g = std::move(raw[i].first);
        p.h = std::move(raw[i].second);
        p.category = "all";
        out.push_back(std::move(p));
    }
    if (sidecar_path.empty()) return out;

    std::ifstream in(sidecar_path);
    if (!in) throw std::runtime_error("cannot open sidecar: " + sidecar_path);
    json side = json::parse(in);
    if (!side.is_array() || side.size() != out.size())
        throw std::runtime_error("sidecar does not match the pair file");
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& s = side[i];
        out[i].pair_id = s.at("pair_id").get<std::string>();
        out[i].category = s.at("category").get<std::string>();
        out[i].subcategory = s.value("subcategory", "");
        out[i].wl_difficulty = s.value("wl_difficulty", "");
        if (s.contains("audit")) {
            out[i].audit.wl1_indistinguishable =
                s["audit"].value("wl1_indistinguishable", false);
            out[i].audit.non_isomorphic = s["audit"].value("non_isomorphic", false);
        }
    }
    return out;
}

}  // namespace grex
