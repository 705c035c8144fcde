#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polykeller {

/// Ordered list of distinct variable names; fixes the ambient arity and the
/// printing order of every polynomial built over it.
class VariableFrame {
public:
    VariableFrame() = default;

    explicit VariableFrame(std::vector<std::string> names) : names_(std::move(names)) {
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            if (names_[i].empty())
                throw std::invalid_argument("empty variable name");
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
        }
    }

    int arity() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    bool operator==(const VariableFrame& o) const { return names_ == o.names_; }
    bool operator!=(const VariableFrame& o) const { return !(*this == o); }

    /// Frame extended by extra trailing names (throws on collision).
    VariableFrame extended(const std::vector<std::string>& extra) const {
        std::vector<std::string> all = names_;
        all.insert(all.end(), extra.begin(), extra.end());
        return VariableFrame(std::move(all));
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

/// Canonical frame x1..xn.
inline VariableFrame default_frame(int n, const std::string& stem = "x") {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        names.push_back(stem + std::to_string(i));
    return VariableFrame(std::move(names));
}

} // namespace polykeller
