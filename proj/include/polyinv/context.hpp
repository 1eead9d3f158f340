#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace polyinv {

class VarContext;
using Ctx = std::shared_ptr<const VarContext>;

// Ordered, immutable list of variable names. Program variables come first;
// algorithms append extension variables at the end and never rename.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    bool same_as(const VarContext& other) const { return names_ == other.names_; }
    // True when this context's names are the leading names of `other`.
    bool is_prefix_of(const VarContext& other) const;

private:
    std::vector<std::string> names_;
};

Ctx make_context(std::vector<std::string> names);
// "x1".."xn".
Ctx make_context(std::size_t n, const std::string& stem = "x");
Ctx extend(const Ctx& ctx, const std::vector<std::string>& extra);
Ctx prefix(const Ctx& ctx, std::size_t n);

bool same_context(const Ctx& a, const Ctx& b);

// Fresh names appended to an existing context: picks `stem`, `stem`_1, ... avoiding clashes.
std::string fresh_name(const VarContext& ctx, const std::string& stem);

}  // namespace polyinv
