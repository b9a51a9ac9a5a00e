#pragma once

#include <vector>

#include "qdc/freealg.hpp"

namespace qdc {

/// Degree-compatible monomial order: degree first, then lexicographic by a
/// generator precedence permutation. Rewriting under such an order never
/// increases degree.
class MonomialOrder {
public:
    /// Precedence = generator index order.
    static MonomialOrder by_index(std::size_t n);
    /// Precedence given by names, lowest first.
    static MonomialOrder by_names(const Alphabet& alpha,
                                  const std::vector<std::string>& lowest_first);

    bool less(const Word& a, const Word& b) const;
    bool greater(const Word& a, const Word& b) const { return less(b, a); }
    const std::vector<int>& ranks() const { return rank_; }

private:
    std::vector<int> rank_;
};

/// An oriented relation lhs -> rhs with every rhs word strictly smaller than
/// lhs under the system order.
struct RewriteRule {
    Word lhs;
    NCPoly rhs;
};

struct ConfluenceFailure {
    Word overlap;
    NCPoly residue;
};

struct ConfluenceReport {
    int degree = 0;
    std::size_t pairs_checked = 0;
    std::vector<ConfluenceFailure> failures;
    bool ok() const { return failures.empty(); }
};

struct CompletionOptions {
    std::size_t max_rules = 20000;
    std::size_t max_coeff_bits = std::size_t(1) << 22;
};

/// A rewriting system completed up to a degree bound: all critical pairs of
/// overlap degree <= completed_degree reduce to zero, so normal forms of
/// inputs within the bound are canonical.
class RewriteSystem {
public:
    RewriteSystem(AlphabetRef alpha, MonomialOrder order,
                  std::vector<RewriteRule> rules, int completed_degree);

    const AlphabetRef& alphabet() const { return alpha_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    int completed_degree() const { return completed_degree_; }

    /// Unique normal form for inputs of degree <= completed_degree; throws
    /// TruncationExceeded beyond it.
    NCPoly normal_form(const NCPoly& p) const;

    bool word_is_normal(const Word& w) const;
    /// All normal words of degree exactly d, in index-lexicographic order.
    std::vector<Word> enumerate_normal_words(int d) const;
    std::vector<Word> normal_words_up_to(int d) const;

private:
    AlphabetRef alpha_;
    MonomialOrder order_;
    std::vector<RewriteRule> rules_;
    int completed_degree_;
    std::vector<std::vector<std::size_t>> by_first_;  // rule index by lhs[0]

    friend ConfluenceReport certify_confluence(const RewriteSystem&, int);
    void build_index();
    // (position, rule) of the leftmost redex, or rule = npos
    std::pair<std::size_t, std::size_t> find_redex(const Word& w) const;
};

/// Truncated completion: returns an inter-reduced system whose critical pairs
/// up to the degree bound all resolve. Deterministic given the order: pending
/// pairs are processed by (degree, lhs1, lhs2, offset).
RewriteSystem complete(AlphabetRef alpha, std::vector<NCPoly> relations,
                       MonomialOrder order, int degree,
                       CompletionOptions options = {});

/// Reduces every S-polynomial of overlap degree <= degree both ways and
/// reports the residues that fail to cancel.
ConfluenceReport certify_confluence(const RewriteSystem& sys, int degree);

/// Legwise normal form of a tensor element; systems align with the legs.
NCPoly normal_form_tensor(const NCPoly& p,
                          const std::vector<const RewriteSystem*>& systems);

}  // namespace qdc
