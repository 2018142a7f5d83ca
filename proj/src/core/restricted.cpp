#include "tsynth/core/restricted.hpp"

#include "tsynth/core/errors.hpp"

namespace tsynth {

DomainRestrictedFt::DomainRestrictedFt(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw ConstructionError("a restricted transducer needs at least one branch");
    for (const auto& b : branches_) require_same_alphabet(b.machine.alphabet(), b.domain.alphabet());
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        require_same_alphabet(branches_[i].domain.alphabet(), branches_[0].domain.alphabet());
        for (std::size_t j = i + 1; j < branches_.size(); ++j)
            if (auto w = dfa_emptiness(dfa_intersect(branches_[i].domain, branches_[j].domain)))
                throw ConstructionError("domains of branches " + std::to_string(i) + " and " + std::to_string(j) +
                                            " overlap on " + quote(*w),
                                        *w);
    }
}

std::optional<std::size_t> DomainRestrictedFt::branch_for(std::u32string_view w) const {
    for (std::size_t i = 0; i < branches_.size(); ++i)
        if (branches_[i].domain.accepts(w)) return i;
    return std::nullopt;
}

std::optional<Word> DomainRestrictedFt::run(std::u32string_view w) const {
    if (auto i = branch_for(w)) return branches_[*i].machine.run(w);
    return std::nullopt;
}

Dfa DomainRestrictedFt::domain() const {
    Dfa acc = branches_.front().domain;
    for (std::size_t i = 1; i < branches_.size(); ++i) acc = dfa_union(acc, branches_[i].domain);
    return acc;
}

DomainRestrictedFt restrict_union(std::vector<Branch> branches) { return DomainRestrictedFt(std::move(branches)); }

}  // namespace tsynth
