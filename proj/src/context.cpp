#include "polyinv/context.hpp"

#include "polyinv/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace polyinv {

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error("empty variable name");
        if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
    }
}

std::optional<std::size_t> VarContext::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

bool VarContext::is_prefix_of(const VarContext& other) const {
    return names_.size() <= other.names_.size() && std::equal(names_.begin(), names_.end(), other.names_.begin());
}

Ctx make_context(std::vector<std::string> names) { return std::make_shared<const VarContext>(std::move(names)); }

Ctx make_context(std::size_t n, const std::string& stem) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return make_context(std::move(names));
}

Ctx extend(const Ctx& ctx, const std::vector<std::string>& extra) {
    std::vector<std::string> names = ctx->names();
    names.insert(names.end(), extra.begin(), extra.end());
    return make_context(std::move(names));
}

Ctx prefix(const Ctx& ctx, std::size_t n) {
    if (n == ctx->size()) return ctx;
    if (n > ctx->size()) throw Error("prefix longer than context");
    return make_context(std::vector<std::string>(ctx->names().begin(), ctx->names().begin() + n));
}

bool same_context(const Ctx& a, const Ctx& b) { return a == b || a->same_as(*b); }

std::string fresh_name(const VarContext& ctx, const std::string& stem) {
    if (!ctx.index_of(stem)) return stem;
    for (std::size_t i = 1;; ++i) {
        std::string cand = stem + "_" + std::to_string(i);
        if (!ctx.index_of(cand)) return cand;
    }
}

}  // namespace polyinv
