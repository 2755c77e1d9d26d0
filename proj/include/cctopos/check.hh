#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cctopos {

enum class Status { pass, fail, refused };

[[nodiscard]] std::string_view to_string(Status status) noexcept;

struct Check {
    std::string name;
    Status status = Status::pass;
    /// Empty when there is nothing to show.
    std::string witness;
};

/// Ordered results of a verification run.
struct CheckList {
    std::vector<Check> items;

    void add(std::string name, bool ok, std::string witness = {});
    void refuse(std::string name, std::string reason);
    void append(const CheckList & other);

    [[nodiscard]] std::size_t count(Status status) const;
    [[nodiscard]] bool all_passed() const { return count(Status::pass) == items.size(); }
    [[nodiscard]] const Check * find(std::string_view name) const;
};

} // namespace cctopos
