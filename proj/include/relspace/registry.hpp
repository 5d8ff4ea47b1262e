#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relspace/error.hpp"

namespace relspace {

// Ordered set of codes with a code -> index map. Order is lexicographic so that
// it does not depend on input row order.
template <typename Tag>
class Registry {
public:
    Registry() = default;

    explicit Registry(std::vector<std::string> codes) : codes_(std::move(codes))
    {
        std::sort(codes_.begin(), codes_.end());
        if (std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end())
            throw Error(ErrorCode::DuplicateKey, "duplicate code in registry");
        index_.reserve(codes_.size());
        for (std::size_t i = 0; i < codes_.size(); ++i)
            index_.emplace(codes_[i], i);
    }

    std::size_t size() const noexcept { return codes_.size(); }
    const std::vector<std::string>& codes() const noexcept { return codes_; }
    const std::string& code(std::size_t i) const { return codes_.at(i); }

    std::optional<std::size_t> find(const std::string& code) const
    {
        auto it = index_.find(code);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    bool operator==(const Registry& other) const { return codes_ == other.codes_; }

private:
    std::vector<std::string> codes_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct ProductTag {};
struct CountryTag {};

using ProductRegistry = Registry<ProductTag>;
using CountryRegistry = Registry<CountryTag>;

using ProductRegistryPtr = std::shared_ptr<const ProductRegistry>;
using CountryRegistryPtr = std::shared_ptr<const CountryRegistry>;

template <typename Tag>
bool same_registry(const std::shared_ptr<const Registry<Tag>>& a,
                   const std::shared_ptr<const Registry<Tag>>& b)
{
    return a == b || (a && b && *a == *b);
}

// Synthetic codes P0000, P0001, ... for matrices built without a panel.
ProductRegistryPtr make_product_registry(std::size_t m);
CountryRegistryPtr make_country_registry(std::size_t n);

}  // namespace relspace
