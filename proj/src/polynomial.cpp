#include "shf/polynomial.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace shf {

namespace {

struct Registry {
    std::mutex mu;
    std::unordered_map<std::string, VarId> ids;
    std::deque<std::string> names;  // deque: references stay valid on growth
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

VarId variable(std::string_view name) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto [it, fresh] = r.ids.try_emplace(std::string(name), static_cast<VarId>(r.names.size()));
    if (fresh) r.names.emplace_back(name);
    return it->second;
}

const std::string& variable_name(VarId id) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    if (id >= r.names.size()) throw DomainError("unknown indeterminate id");
    return r.names[id];
}

std::string to_string(const Monomial& m) {
    std::string out;
    for (const auto& [v, e] : m.factors()) {
        if (!out.empty()) out += "*";
        out += variable_name(v);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

}  // namespace shf
