#include <cctopos/check.hh>

#include <algorithm>

namespace cctopos {

std::string_view to_string(Status status) noexcept
{
    switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::refused: return "refused";
    }
    return "?";
}

void CheckList::add(std::string name, bool ok, std::string witness)
{
    items.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(witness)});
}

void CheckList::refuse(std::string name, std::string reason)
{
    items.push_back({std::move(name), Status::refused, std::move(reason)});
}

void CheckList::append(const CheckList & other)
{
    items.insert(items.end(), other.items.begin(), other.items.end());
}

std::size_t CheckList::count(Status status) const
{
    return std::count_if(items.begin(), items.end(), [&](const Check & c) { return c.status == status; });
}

const Check * CheckList::find(std::string_view name) const
{
    auto i = std::find_if(items.begin(), items.end(), [&](const Check & c) { return c.name == name; });
    return i == items.end() ? nullptr : &*i;
}

} // namespace cctopos
