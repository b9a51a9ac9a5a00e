#include "qdc/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace qdc {

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder MonomialOrder::by_index(std::size_t n) {
    MonomialOrder o;
    o.rank_.resize(n);
    for (std::size_t i = 0; i < n; ++i) o.rank_[i] = static_cast<int>(i);
    return o;
}

MonomialOrder MonomialOrder::by_names(const Alphabet& alpha,
                                      const std::vector<std::string>& lowest) {
    if (lowest.size() != alpha.size())
        throw Error("precedence list must cover the alphabet");
    MonomialOrder o;
    o.rank_.assign(alpha.size(), -1);
    for (std::size_t r = 0; r < lowest.size(); ++r) {
        auto g = alpha.find(lowest[r]);
        if (!g) throw Error("precedence names unknown generator " + lowest[r]);
        o.rank_[*g] = static_cast<int>(r);
    }
    for (int r : o.rank_)
        if (r < 0) throw Error("precedence list must cover the alphabet");
    return o;
}

bool MonomialOrder::less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return rank_.at(a[i]) < rank_.at(b[i]);
    }
    return false;
}

// ---------------------------------------------------------------------------
// RewriteSystem

RewriteSystem::RewriteSystem(AlphabetRef alpha, MonomialOrder order,
                             std::vector<RewriteRule> rules,
                             int completed_degree)
    : alpha_(std::move(alpha)),
      order_(std::move(order)),
      rules_(std::move(rules)),
      completed_degree_(completed_degree) {
    for (const auto& r : rules_) {
        if (r.lhs.empty()) throw Error("rewrite rule with empty lhs");
        for (const auto& [k, c] : r.rhs.terms())
            if (!order_.less(k[0], r.lhs))
                throw Error("rewrite rule rhs not smaller than lhs");
    }
    std::sort(rules_.begin(), rules_.end(),
              [this](const RewriteRule& a, const RewriteRule& b) {
                  return order_.less(a.lhs, b.lhs);
              });
    build_index();
}

void RewriteSystem::build_index() {
    by_first_.assign(alpha_->size(), {});
    for (std::size_t i = 0; i < rules_.size(); ++i)
        by_first_[rules_[i].lhs[0]].push_back(i);
}

std::pair<std::size_t, std::size_t> RewriteSystem::find_redex(
    const Word& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (std::size_t ri : by_first_[w[pos]]) {
            const Word& l = rules_[ri].lhs;
            if (pos + l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin() + pos))
                return {pos, ri};
        }
    }
    return {0, static_cast<std::size_t>(-1)};
}

bool RewriteSystem::word_is_normal(const Word& w) const {
    return find_redex(w).second == static_cast<std::size_t>(-1);
}

namespace {

struct OrderLess {
    const MonomialOrder* order;
    bool operator()(const Word& a, const Word& b) const {
        return order->less(a, b);
    }
};

// Shared reduction core used by normal_form and by completion (which reduces
// against a rule set it is still building).
NCPoly reduce_full(const AlphabetRef& alpha, const MonomialOrder& order,
                   const std::vector<RewriteRule>& rules,
                   const std::vector<std::vector<std::size_t>>& by_first,
                   const NCPoly& p) {
    NCPoly out(alpha);
    std::map<Word, Scalar, OrderLess> work{OrderLess{&order}};
    for (const auto& [k, c] : p.terms()) {
        auto [it, fresh] = work.try_emplace(k[0], c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) work.erase(it);
        }
    }
    while (!work.empty()) {
        auto top = std::prev(work.end());
        Word w = top->first;
        Scalar c = top->second;
        work.erase(top);

        std::size_t pos = 0, ri = static_cast<std::size_t>(-1);
        for (std::size_t p0 = 0; p0 < w.size() && ri == static_cast<std::size_t>(-1); ++p0) {
            for (std::size_t cand : by_first[w[p0]]) {
                const Word& l = rules[cand].lhs;
                if (p0 + l.size() > w.size()) continue;
                if (std::equal(l.begin(), l.end(), w.begin() + p0)) {
                    pos = p0;
                    ri = cand;
                    break;
                }
            }
        }
        if (ri == static_cast<std::size_t>(-1)) {
            out.add_term({w}, c);
            continue;
        }
        const RewriteRule& rule = rules[ri];
        Word prefix(w.begin(), w.begin() + pos);
        Word suffix(w.begin() + pos + rule.lhs.size(), w.end());
        for (const auto& [rk, rc] : rule.rhs.terms()) {
            Word nw = prefix;
            nw.insert(nw.end(), rk[0].begin(), rk[0].end());
            nw.insert(nw.end(), suffix.begin(), suffix.end());
            Scalar nc = c * rc;
            auto [it, fresh] = work.try_emplace(std::move(nw), nc);
            if (!fresh) {
                it->second += nc;
                if (it->second.is_zero()) work.erase(it);
            }
        }
    }
    return out;
}

}  // namespace

NCPoly RewriteSystem::normal_form(const NCPoly& p) const {
    if (p.arity() != 1) throw Error("normal_form expects arity 1");
    if (!same_alphabet(p.legs().front(), alpha_))
        throw Error("normal_form: alphabet mismatch");
    if (p.degree() > completed_degree_)
        throw TruncationExceeded(
            "input degree " + std::to_string(p.degree()) +
            " exceeds completed degree " + std::to_string(completed_degree_));
    return reduce_full(alpha_, order_, rules_, by_first_, p);
}

std::vector<Word> RewriteSystem::enumerate_normal_words(int d) const {
    if (d > completed_degree_)
        throw TruncationExceeded("normal words requested beyond completion");
    std::vector<Word> out;
    std::size_t n = alpha_->size();
    Word cur;
    // any new redex introduced by an extension must be a suffix
    auto suffix_redex = [&](const Word& w) {
        for (const auto& r : rules_) {
            if (r.lhs.size() > w.size()) continue;
            if (std::equal(r.lhs.begin(), r.lhs.end(),
                           w.end() - static_cast<long>(r.lhs.size())))
                return true;
        }
        return false;
    };
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (GenId g = 0; g < n; ++g) {
            cur.push_back(g);
            if (!suffix_redex(cur)) self(self, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, d);
    return out;
}

std::vector<Word> RewriteSystem::normal_words_up_to(int d) const {
    std::vector<Word> out;
    for (int k = 0; k <= d; ++k) {
        auto v = enumerate_normal_words(k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// completion

namespace {

struct PairKey {
    int degree;
    Word lhs1, lhs2;
    int offset;
};

struct PairKeyLess {
    const MonomialOrder* order;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.lhs1 != b.lhs1) return order->less(a.lhs1, b.lhs1);
        if (a.lhs2 != b.lhs2) return order->less(a.lhs2, b.lhs2);
        return a.offset < b.offset;
    }
};

bool contains_subword(const Word& w, const Word& sub) {
    if (sub.size() > w.size()) return false;
    for (std::size_t p = 0; p + sub.size() <= w.size(); ++p)
        if (std::equal(sub.begin(), sub.end(), w.begin() + p)) return true;
    return false;
}

struct Completer {
    AlphabetRef alpha;
    MonomialOrder order;
    int degree;
    CompletionOptions opts;

    std::vector<RewriteRule> rules;
    std::vector<bool> live;
    std::vector<std::vector<std::size_t>> by_first;
    std::set<PairKey, PairKeyLess> pending;
    std::deque<NCPoly> todo;

    Completer(AlphabetRef a, MonomialOrder o, int d, CompletionOptions op)
        : alpha(std::move(a)), order(std::move(o)), degree(d), opts(op),
          pending(PairKeyLess{&order}) {
        by_first.assign(alpha->size(), {});
    }

    void rebuild_index() {
        by_first.assign(alpha->size(), {});
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (live[i]) by_first[rules[i].lhs[0]].push_back(i);
    }

    NCPoly reduce(const NCPoly& p) {
        return reduce_full(alpha, order, rules, by_first, p);
    }

    void check_guards(const NCPoly& p) {
        for (const auto& [k, c] : p.terms()) {
            (void)k;
            if (c.complexity() > opts.max_coeff_bits)
                throw CoefficientBlowup("coefficient size guard tripped");
        }
    }

    const Word* find_live_lhs(const Word& w) const {
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (live[i] && rules[i].lhs == w) return &rules[i].lhs;
        return nullptr;
    }

    void enqueue_pairs_with(const Word& l1) {
        // ordered pairs in both roles, including self-overlap
        for (std::size_t i = 0; i < rules.size(); ++i) {
            if (!live[i]) continue;
            add_overlaps(l1, rules[i].lhs);
            if (rules[i].lhs != l1) add_overlaps(rules[i].lhs, l1);
        }
    }

    void add_overlaps(const Word& l1, const Word& l2) {
        // l2 starts at offset inside l1 and sticks out on the right
        for (std::size_t off = 1; off < l1.size(); ++off) {
            std::size_t k = l1.size() - off;  // overlap length
            if (k >= l2.size()) continue;
            if (!std::equal(l2.begin(), l2.begin() + k, l1.begin() + off))
                continue;
            int deg = static_cast<int>(off + l2.size());
            if (deg > degree) continue;
            pending.insert(PairKey{deg, l1, l2, static_cast<int>(off)});
        }
    }

    void process(const NCPoly& raw) {
        NCPoly p = reduce(raw);
        if (p.is_zero()) return;
        check_guards(p);
        // leading word under the completion order
        const Word* lead = nullptr;
        for (const auto& [k, c] : p.terms()) {
            (void)c;
            if (!lead || order.less(*lead, k[0])) lead = &k[0];
        }
        Word lhs = *lead;
        Scalar lc = p.coeff({lhs});
        NCPoly rhs(alpha);
        for (const auto& [k, c] : p.terms())
            if (k[0] != lhs) rhs.add_term(k, -(c / lc));

        // retire rules whose lhs becomes reducible by the new one
        for (std::size_t i = 0; i < rules.size(); ++i) {
            if (!live[i]) continue;
            if (contains_subword(rules[i].lhs, lhs)) {
                live[i] = false;
                todo.push_back(NCPoly::monomial(alpha, rules[i].lhs,
                                                alpha->field().one()) -
                               rules[i].rhs);
            }
        }
        rules.push_back(RewriteRule{lhs, rhs});
        live.push_back(true);
        std::size_t live_count = 0;
        for (bool b : live) live_count += b;
        if (live_count > opts.max_rules)
            throw CoefficientBlowup("rule count guard tripped");
        rebuild_index();
        enqueue_pairs_with(lhs);
    }

    RewriteSystem run(std::vector<NCPoly> relations) {
        for (auto& r : relations) {
            if (r.degree() > degree)
                throw TruncationExceeded("relation degree exceeds bound");
            todo.push_back(std::move(r));
        }
        while (!todo.empty() || !pending.empty()) {
            if (!todo.empty()) {
                NCPoly p = std::move(todo.front());
                todo.pop_front();
                process(p);
                continue;
            }
            PairKey key = *pending.begin();
            pending.erase(pending.begin());
            const Word* l1 = find_live_lhs(key.lhs1);
            const Word* l2 = find_live_lhs(key.lhs2);
            if (!l1 || !l2) continue;
            std::size_t off = static_cast<std::size_t>(key.offset);
            Word prefix(key.lhs1.begin(), key.lhs1.begin() + off);
            Word suffix(key.lhs2.begin() + (key.lhs1.size() - off),
                        key.lhs2.end());
            std::size_t i1 = 0, i2 = 0;
            for (std::size_t i = 0; i < rules.size(); ++i) {
                if (!live[i]) continue;
                if (rules[i].lhs == key.lhs1) i1 = i;
                if (rules[i].lhs == key.lhs2) i2 = i;
            }
            const Field& f = alpha->field();
            NCPoly left = rules[i1].rhs * NCPoly::monomial(alpha, suffix, f.one());
            NCPoly right =
                NCPoly::monomial(alpha, prefix, f.one()) * rules[i2].rhs;
            process(left - right);
        }

        // final inter-reduction of right-hand sides
        std::vector<RewriteRule> out;
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (live[i]) out.push_back(rules[i]);
        rules = out;
        live.assign(rules.size(), true);
        rebuild_index();
        for (auto& r : rules) r.rhs = reduce(r.rhs);
        return RewriteSystem(alpha, order, rules, degree);
    }
};

}  // namespace

RewriteSystem complete(AlphabetRef alpha, std::vector<NCPoly> relations,
                       MonomialOrder order, int degree,
                       CompletionOptions options) {
    for (const auto& r : relations) {
        if (r.arity() != 1) throw Error("relations must have arity 1");
        if (!same_alphabet(r.legs().front(), alpha))
            throw Error("relation over wrong alphabet");
    }
    Completer c(std::move(alpha), std::move(order), degree, options);
    return c.run(std::move(relations));
}

ConfluenceReport certify_confluence(const RewriteSystem& sys, int degree) {
    ConfluenceReport report;
    report.degree = degree;
    const auto& rules = sys.rules();
    const Field& f = sys.alphabet()->field();
    const AlphabetRef& alpha = sys.alphabet();

    auto reduce = [&](const NCPoly& p) {
        return reduce_full(alpha, sys.order(), rules, sys.by_first_, p);
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& l1 = rules[i].lhs;
            const Word& l2 = rules[j].lhs;
            // proper overlaps: l2 starts inside l1 and sticks out
            for (std::size_t off = 1; off < l1.size(); ++off) {
                std::size_t k = l1.size() - off;
                if (k >= l2.size()) continue;
                if (!std::equal(l2.begin(), l2.begin() + k, l1.begin() + off))
                    continue;
                if (static_cast<int>(off + l2.size()) > degree) continue;
                Word prefix(l1.begin(), l1.begin() + off);
                Word suffix(l2.begin() + k, l2.end());
                ++report.pairs_checked;
                NCPoly left =
                    rules[i].rhs * NCPoly::monomial(alpha, suffix, f.one());
                NCPoly right =
                    NCPoly::monomial(alpha, prefix, f.one()) * rules[j].rhs;
                NCPoly residue = reduce(left - right);
                if (!residue.is_zero()) {
                    Word overlap = l1;
                    overlap.insert(overlap.end(), suffix.begin(), suffix.end());
                    report.failures.push_back({overlap, residue});
                }
            }
            // containments: l2 strictly inside l1
            if (i != j && l2.size() < l1.size()) {
                for (std::size_t off = 0; off + l2.size() <= l1.size(); ++off) {
                    if (!std::equal(l2.begin(), l2.end(), l1.begin() + off))
                        continue;
                    if (static_cast<int>(l1.size()) > degree) continue;
                    ++report.pairs_checked;
                    Word prefix(l1.begin(), l1.begin() + off);
                    Word suffix(l1.begin() + off + l2.size(), l1.end());
                    NCPoly mid = NCPoly::monomial(alpha, prefix, f.one()) *
                                 rules[j].rhs *
                                 NCPoly::monomial(alpha, suffix, f.one());
                    NCPoly residue = reduce(rules[i].rhs - mid);
                    if (!residue.is_zero())
                        report.failures.push_back({l1, residue});
                }
            }
        }
    }
    return report;
}

NCPoly normal_form_tensor(const NCPoly& p,
                          const std::vector<const RewriteSystem*>& systems) {
    if (systems.size() != p.arity())
        throw Error("normal_form_tensor: system count mismatch");
    for (std::size_t i = 0; i < systems.size(); ++i)
        if (!same_alphabet(p.legs()[i], systems[i]->alphabet()))
            throw Error("normal_form_tensor: alphabet mismatch at leg " +
                        std::to_string(i));
    NCPoly out(p.legs());
    for (const auto& [k, c] : p.terms()) {
        std::vector<std::pair<NCPoly::Key, Scalar>> acc;
        acc.emplace_back(NCPoly::Key{}, c);
        for (std::size_t leg = 0; leg < p.arity(); ++leg) {
            NCPoly nf = systems[leg]->normal_form(
                NCPoly::monomial(p.legs()[leg], k[leg],
                                 p.field().one()));
            std::vector<std::pair<NCPoly::Key, Scalar>> next;
            next.reserve(acc.size() * std::max<std::size_t>(1, nf.term_count()));
            for (const auto& [pk, pc] : acc) {
                for (const auto& [nk, nc] : nf.terms()) {
                    NCPoly::Key key = pk;
                    key.push_back(nk[0]);
                    next.emplace_back(std::move(key), pc * nc);
                }
            }
            acc = std::move(next);
        }
        for (auto& [key, coef] : acc) out.add_term(key, coef);
    }
    return out;
}

}  // namespace qdc
