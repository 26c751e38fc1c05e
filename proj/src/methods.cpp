#include "grex/methods.hpp"

#include <unordered_map>

namespace grex {

MethodSpec parse_method(const std::string& name) {
    if (name == "1wl") return WlConfig::wl1();
    if (name == "s3") return ExtensionConfig::s(3);
    if (name == "s4") return ExtensionConfig::s(4);
    if (name == "n1") return ExtensionConfig::n(1);
    if (name == "n2") return ExtensionConfig::n(2);
    if (name == "m1") return ExtensionConfig::m1();
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        std::string head = name.substr(0, colon);
        int k = std::atoi(name.c_str() + colon + 1);
        if (k >= 2 && k <= 8) {
            if (head == "kwl") return WlConfig::wlk(k);
            if (head == "kfwl") return WlConfig::fwlk(k);
        }
    }
    throw std::invalid_argument("unknown method '" + name +
                                "' (expect 1wl, kwl:K, kfwl:K, s3, s4, n1, n2, m1)");
}

std::string method_name(const MethodSpec& method) {
    if (const auto* wl = std::get_if<WlConfig>(&method)) {
        switch (wl->method) {
            case WlMethod::WL1: return "1wl";
            case WlMethod::WLk: return "kwl:" + std::to_string(wl->k);
            case WlMethod::FWLk: return "kfwl:" + std::to_string(wl->k);
        }
    }
    const auto& ext = std::get<ExtensionConfig>(method);
    switch (ext.kind) {
        case ExtensionKind::Sk: return "s" + std::to_string(ext.k);
        case ExtensionKind::Nk: return "n" + std::to_string(ext.k);
        case ExtensionKind::M1: return "m1";
    }
    return "?";
}

bool method_distinguishes(const MethodSpec& method, const Graph& g, const Graph& h) {
    if (const auto* wl = std::get_if<WlConfig>(&method)) return distinguishes(*wl, g, h);
    return extension_distinguishes(std::get<ExtensionConfig>(method), g, h);
}

Digest128 method_signature(const MethodSpec& method, const Graph& g, EgoNetClassifier* pool) {
    if (const auto* wl = std::get_if<WlConfig>(&method)) return wl_signature(g, *wl);
    return extension_signature(std::get<ExtensionConfig>(method), g, pool);
}

std::vector<std::pair<int, int>> find_collision_pairs(const std::vector<Graph>& graphs,
                                                      const MethodSpec& method) {
    EgoNetClassifier pool;
    std::unordered_map<Digest128, std::vector<int>, Digest128Hash> index;
    std::vector<Digest128> order;  // first-seen bucket order
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        Digest128 sig = method_signature(method, graphs[i], &pool);
        auto [it, fresh] = index.try_emplace(sig);
        if (fresh) order.push_back(sig);
        it->second.push_back(static_cast<int>(i));
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& sig : order) {
        const auto& members = index[sig];
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                pairs.emplace_back(members[a], members[b]);
    }
    return pairs;
}

}  // namespace grex
