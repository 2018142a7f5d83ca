#pragma once

#include <optional>
#include <vector>

#include "tsynth/core/ft.hpp"

namespace tsynth {

struct Branch {
    Ft machine;
    Dfa domain;
};

// Piecewise transducer over pairwise-disjoint domains.
class DomainRestrictedFt {
public:
    // Throws ConstructionError with a witness when two domains overlap.
    explicit DomainRestrictedFt(std::vector<Branch> branches);

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    const Alphabet& alphabet() const { return branches_.front().domain.alphabet(); }

    // nullopt when w lies outside every domain.
    std::optional<Word> run(std::u32string_view w) const;
    std::optional<std::size_t> branch_for(std::u32string_view w) const;

    // Union of all domains.
    Dfa domain() const;

private:
    std::vector<Branch> branches_;
};

DomainRestrictedFt restrict_union(std::vector<Branch> branches);

}  // namespace tsynth
