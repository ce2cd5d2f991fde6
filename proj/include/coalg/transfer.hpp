#pragma once

// Transfer of comonoid, comodule and coring-comodule structure along the
// truncation q_n : X -> L_n X, with preservation reports and a seeded search
// for instances where the transferred structure breaks.
//
// The induced maps always follow the case-split formulas
//     delta_n = (q (x) q) delta lambda,  rho_n = (q (x) 1) rho lambda,
//     mu_n = q mu (lambda (x) 1),
// where lambda : L_n X -> X is the identity in degrees <= n and zero in
// degree n+1.  Whether the result is a structure at all is what the report
// decides; the degree hypotheses are recorded, never enforced.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coalg/complex.hpp"
#include "coalg/generate.hpp"
#include "coalg/graded.hpp"
#include "coalg/structures.hpp"

namespace coalg {

enum class StructureKind { comonoid, comodule, coring_comodule };

inline std::string to_string(StructureKind k) {
    switch (k) {
        case StructureKind::comonoid: return "comonoid";
        case StructureKind::comodule: return "comodule";
        case StructureKind::coring_comodule: return "coring-comodule";
    }
    return "?";
}

inline std::optional<StructureKind> parse_kind(const std::string& s) {
    if (s == "comonoid") return StructureKind::comonoid;
    if (s == "comodule") return StructureKind::comodule;
    if (s == "coring-comodule" || s == "coring_comodule") return StructureKind::coring_comodule;
    return std::nullopt;
}

/// Verdict groups, in reporting order.
inline const std::vector<std::string>& verdict_names() {
    static const std::vector<std::string> names{"square", "axioms", "map", "local", "local-equivalence"};
    return names;
}

struct PreservationReport {
    StructureKind kind = StructureKind::comonoid;
    int n = 0;
    bool square = true;
    bool axioms = true;
    bool map = true;
    bool local = true;
    bool local_equivalence = true;
    std::map<std::string, bool> hypotheses;
    /// First failing check in `checks` order (axioms of the induced
    /// structure come first, then the squares, then q_n and locality).
    std::optional<Witness> witness;
    /// Individual identities, named "<verdict>" or "<verdict>/<identity>".
    std::vector<Check> checks;

    bool green() const { return square && axioms && map && local && local_equivalence; }
    bool hypotheses_hold() const {
        for (auto& [k, v] : hypotheses)
            if (!v) return false;
        return true;
    }
    bool verdict(const std::string& name) const {
        if (name == "square") return square;
        if (name == "axioms") return axioms;
        if (name == "map") return map;
        if (name == "local") return local;
        return local_equivalence;
    }

    friend bool operator==(const PreservationReport&, const PreservationReport&) = default;
};

namespace detail {

inline std::string verdict_group(const std::string& check) { return check.substr(0, check.find('/')); }

inline void finish(PreservationReport& r) {
    for (const auto& c : r.checks) {
        if (c.pass) continue;
        auto g = verdict_group(c.name);
        if (g == "square") r.square = false;
        else if (g == "axioms") r.axioms = false;
        else if (g == "map") r.map = false;
        else if (g == "local") r.local = false;
        else r.local_equivalence = false;
        if (!r.witness) r.witness = c.witness;
    }
}

inline void add(PreservationReport& r, std::string name, std::optional<Witness> failure) {
    if (failure) failure->identity = name;
    r.checks.push_back({std::move(name), !failure.has_value(), std::move(failure)});
}

inline void absorb(PreservationReport& r, const std::string& prefix, const AxiomReport& a) {
    for (auto c : a.checks) {
        c.name = prefix + "/" + c.name;
        if (c.witness) c.witness->identity = c.name;
        r.checks.push_back(std::move(c));
    }
}

template <ExactField K>
void add_locality(PreservationReport& r, const Truncation<K>& t, int n) {
    auto loc = is_local(t.complex, n);
    add(r, "local", loc.ok ? std::nullopt : loc.witness);
    auto eq = is_local_equivalence(t.q, n);
    add(r, "local-equivalence", eq.ok ? std::nullopt : eq.witness);
}

/// Endomorphism of m that keeps degrees >= from and kills the rest.
template <ExactField K>
GradedMap<K> keep_degrees_from(const GradedModule<K>& m, int from) {
    typename GradedMap<K>::Blocks b;
    for (auto& [d, labels] : m.support())
        if (d >= from) b.emplace(d, Matrix<K>::identity(m.field(), labels.size()));
    return GradedMap<K>(m, m, 0, std::move(b));
}

template <ExactField K>
bool vanishes_at_or_above(const GradedModule<K>& m, int from) {
    for (auto& [d, l] : m.support())
        if (d >= from) return false;
    return true;
}

template <ExactField K>
bool vanishes_at_or_below(const GradedModule<K>& m, int to) {
    for (auto& [d, l] : m.support())
        if (d <= to) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Comonoids

template <ExactField K>
struct InducedComonoid {
    Comonoid<K> structure;
    ChainMap<K> q;
    PreservationReport report;
};

template <ExactField K>
InducedComonoid<K> induce_comonoid(const Comonoid<K>& c, int n) {
    auto t = truncate(c.carrier, n);
    const auto& q = t.q.map();
    auto qq = tensor_maps(q, q);
    auto delta_n = compose(qq, compose(c.delta, t.lower_inclusion));
    Comonoid<K> induced(t.complex, delta_n);

    PreservationReport r;
    r.kind = StructureKind::comonoid;
    r.n = n;
    r.hypotheses["n < -1"] = n < -1;
    detail::absorb(r, "axioms", check_comonoid(induced));
    auto via_target = compose(delta_n, q);
    auto via_source = compose(qq, c.delta);
    detail::add(r, "square", first_difference(via_target, via_source));
    auto upper = compose(via_source, detail::keep_degrees_from(c.carrier.module(), n + 1));
    detail::add(r, "square/vanishing", first_difference(upper, GradedMap<K>::zero(upper.source(), upper.target(), 0)));
    detail::add(r, "map/chain-map", chain_map_defect(c.carrier, t.complex, q));
    detail::add(r, "map/comultiplication", first_difference(via_target, via_source));
    detail::add_locality(r, t, n);
    detail::finish(r);
    return {std::move(induced), std::move(t.q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Comodules

template <ExactField K>
struct InducedComodule {
    Comodule<K> structure;
    ChainMap<K> q;
    PreservationReport report;
};

template <ExactField K>
InducedComodule<K> induce_comodule(const Comodule<K>& m, int n) {
    auto t = truncate(m.carrier, n);
    const auto& q = t.q.map();
    auto qb = tensor_maps(q, GradedMap<K>::identity(m.coalgebra.carrier.module()));
    auto rho_n = compose(qb, compose(m.coaction, t.lower_inclusion));
    Comodule<K> induced(m.coalgebra, t.complex, rho_n);

    PreservationReport r;
    r.kind = StructureKind::comodule;
    r.n = n;
    r.hypotheses["B_{>=0} = 0"] = detail::vanishes_at_or_above(m.coalgebra.carrier.module(), 0);
    detail::absorb(r, "axioms", check_comodule(induced));
    auto via_target = compose(rho_n, q);
    auto via_source = compose(qb, m.coaction);
    detail::add(r, "square", first_difference(via_target, via_source));
    auto upper = compose(via_source, detail::keep_degrees_from(m.carrier.module(), n + 1));
    detail::add(r, "square/vanishing", first_difference(upper, GradedMap<K>::zero(upper.source(), upper.target(), 0)));
    detail::add(r, "map/chain-map", chain_map_defect(m.carrier, t.complex, q));
    detail::add(r, "map/coaction", first_difference(via_target, via_source));
    detail::add_locality(r, t, n);
    detail::finish(r);
    return {std::move(induced), std::move(t.q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Coring comodules

template <ExactField K>
struct InducedCoringComodule {
    CoringComodule<K> structure;
    ChainMap<K> q;
    PreservationReport report;
};

template <ExactField K>
InducedCoringComodule<K> induce_coring_comodule(const CoringComodule<K>& m, int n) {
    const auto& am = m.coring.algebra.carrier.module();
    const auto& bm = m.coring.carrier.module();
    const auto id_a = GradedMap<K>::identity(am);
    const auto id_b = GradedMap<K>::identity(bm);
    const auto& carrier = m.module.carrier;

    auto t = truncate(carrier, n);
    const auto& q = t.q.map();
    auto mu_n = compose(q, compose(m.module.action, tensor_maps(t.lower_inclusion, id_a)));
    RightModule<K> lmod(m.module.algebra, t.complex, mu_n);

    auto source_rt = m.tensor();
    auto target_rt = relative_tensor(lmod, m.coring.as_left());
    // q (x)_A 1 : M (x)_A B -> L_n M (x)_A B
    auto q_rel = compose(target_rt.projection, compose(tensor_maps(q, id_b), source_rt.section));
    auto delta_n = compose(q_rel, compose(m.coaction, t.lower_inclusion));
    CoringComodule<K> induced(m.coring, lmod, delta_n);

    PreservationReport r;
    r.kind = StructureKind::coring_comodule;
    r.n = n;
    r.hypotheses["A_{<=0} = 0"] = detail::vanishes_at_or_below(am, 0);
    r.hypotheses["B_{>=0} = 0"] = detail::vanishes_at_or_above(bm, 0);
    detail::absorb(r, "axioms", check_coring_comodule(induced, false));

    auto act_source = compose(q, m.module.action);
    auto act_target = compose(mu_n, tensor_maps(q, id_a));
    detail::add(r, "square/action", first_difference(act_target, act_source));
    auto upper = compose(act_source, tensor_maps(detail::keep_degrees_from(carrier.module(), n + 1), id_a));
    detail::add(r, "square/action-vanishing",
                first_difference(upper, GradedMap<K>::zero(upper.source(), upper.target(), 0)));
    auto co_source = compose(q_rel, m.coaction);
    auto co_target = compose(delta_n, q);
    detail::add(r, "square/coaction", first_difference(co_target, co_source));

    detail::add(r, "map/chain-map", chain_map_defect(carrier, t.complex, q));
    detail::add(r, "map/action", first_difference(act_target, act_source));
    detail::add(r, "map/coaction", first_difference(co_target, co_source));
    detail::add_locality(r, t, n);
    detail::finish(r);
    return {std::move(induced), std::move(t.q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Reports on validated structures

template <ExactField K>
PreservationReport preservation_report(const Comonoid<K>& c, int n) {
    auto base = check_comonoid(c);
    if (!base.ok()) throw BaseStructureInvalid("comonoid fails " + base.first_failure()->identity);
    return induce_comonoid(c, n).report;
}

template <ExactField K>
PreservationReport preservation_report(const Comodule<K>& m, int n) {
    auto base = check_comodule(m);
    if (!base.ok()) throw BaseStructureInvalid("comodule fails " + base.first_failure()->identity);
    return induce_comodule(m, n).report;
}

template <ExactField K>
PreservationReport preservation_report(const CoringComodule<K>& m, int n) {
    auto base = check_coring_comodule(m);
    if (!base.ok()) throw BaseStructureInvalid("coring comodule fails " + base.first_failure()->identity);
    return induce_coring_comodule(m, n).report;
}

// ---------------------------------------------------------------------------
// Counterexample search
//
// Candidates are enumerated deterministically: dimension vectors (one entry
// per carrier and degree of the window) by total dimension and then
// lexicographically; for each, every assignment of {0, 1, -1} to the free
// matrix entries, provided there are at most 3^6 of them.  Once that phase
// is exhausted, remaining trials draw dimension vectors and coefficients at
// random from the seeded generator.  Each candidate costs one trial whether
// or not it turns out to be a valid structure.

enum class HypothesisPolicy { any, respect, violate };

struct SearchConfig {
    StructureKind mode = StructureKind::comonoid;
    int n = 0;
    int window_lo = -1;
    int window_hi = 0;
    int max_dim = 2;
    int trials = 1000;
    std::uint64_t seed = 0;
    HypothesisPolicy policy = HypothesisPolicy::any;
};

template <ExactField K>
using AnyStructure = std::variant<Comonoid<K>, Comodule<K>, CoringComodule<K>>;

template <ExactField K>
struct SearchHit {
    AnyStructure<K> structure;
    int n = 0;
    PreservationReport report;
    int trial = 0;  ///< zero-based index of the candidate
};

template <ExactField K>
struct SearchResult {
    std::optional<SearchHit<K>> hit;
    int trials_run = 0;
    int valid_candidates = 0;
};

namespace detail {

/// Supplies matrix entries to a candidate builder; records how many were
/// asked for.
struct CoefficientFeed {
    std::vector<int> values;
    std::size_t used = 0;

    int next() { return used < values.size() ? values[used++] : (++used, 0); }
};

struct CarrierWindow {
    std::vector<int> degrees;
};

template <ExactField K>
GradedModule<K> module_from_dims(const K& f, const std::vector<int>& degrees, const int* dims,
                                 const std::string& prefix) {
    Support s;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        for (int j = 0; j < dims[i]; ++j)
            s[degrees[i]].push_back(prefix + std::to_string(degrees[i]) + (dims[i] > 1 ? "_" + std::to_string(j) : ""));
    return GradedModule<K>(f, std::move(s));
}

template <ExactField K>
GradedMap<K> map_from_feed(CoefficientFeed& feed, const GradedModule<K>& src, const GradedModule<K>& tgt, int degree) {
    const K& f = src.field();
    typename GradedMap<K>::Blocks b;
    for (auto& [i, labels] : src.support()) {
        const std::size_t rows = tgt.dim(i + degree);
        if (rows == 0) continue;
        Matrix<K> m(f, rows, labels.size());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < labels.size(); ++c) m(r, c) = f.from_int(feed.next());
        b.emplace(i, std::move(m));
    }
    return GradedMap<K>(src, tgt, degree, std::move(b));
}

template <ExactField K>
ChainComplex<K> complex_from_feed(CoefficientFeed& feed, const GradedModule<K>& m) {
    return ChainComplex<K>(m, map_from_feed(feed, m, m, -1));
}

/// Builds one candidate; throws coalg::Error when the coefficients do not
/// define a valid structure.
template <ExactField K>
AnyStructure<K> build_candidate(const K& f, StructureKind mode, const std::vector<CarrierWindow>& windows,
                                const std::vector<int>& dims, CoefficientFeed& feed) {
    const int* p = dims.data();
    auto next_module = [&](std::size_t w, const std::string& prefix) {
        auto m = module_from_dims(f, windows[w].degrees, p, prefix);
        p += windows[w].degrees.size();
        return m;
    };
    if (mode == StructureKind::comonoid) {
        auto xm = next_module(0, "x");
        auto x = complex_from_feed(feed, xm);
        return Comonoid<K>(x, map_from_feed(feed, xm, tensor_modules(xm, xm), 0));
    }
    if (mode == StructureKind::comodule) {
        auto bm = next_module(0, "b");
        auto mm = next_module(1, "m");
        auto b = complex_from_feed(feed, bm);
        Comonoid<K> coalgebra(b, map_from_feed(feed, bm, tensor_modules(bm, bm), 0));
        auto x = complex_from_feed(feed, mm);
        return Comodule<K>(coalgebra, x, map_from_feed(feed, mm, tensor_modules(mm, bm), 0));
    }
    auto am = next_module(0, "a");
    auto bm = next_module(1, "b");
    auto mm = next_module(2, "m");
    auto a = complex_from_feed(feed, am);
    Monoid<K> algebra(a, map_from_feed(feed, tensor_modules(am, am), am, 0));
    auto b = complex_from_feed(feed, bm);
    Comonoid<K> c(b, map_from_feed(feed, bm, tensor_modules(bm, bm), 0));
    auto coring = Coring<K>::with_zero_actions(algebra, c);
    auto x = complex_from_feed(feed, mm);
    RightModule<K> module(algebra, x, map_from_feed(feed, tensor_modules(mm, am), mm, 0));
    auto raw = map_from_feed(feed, mm, tensor_modules(mm, bm), 0);
    auto rt = relative_tensor(module, coring.as_left());
    return CoringComodule<K>(coring, module, compose(rt.projection, raw));
}

template <ExactField K>
std::optional<PreservationReport> evaluate(const AnyStructure<K>& s, int n) {
    return std::visit(
        [n](const auto& x) -> std::optional<PreservationReport> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Comonoid<K>>) {
                if (!check_comonoid(x).ok()) return std::nullopt;
                return induce_comonoid(x, n).report;
            } else if constexpr (std::is_same_v<T, Comodule<K>>) {
                if (!check_comodule(x).ok()) return std::nullopt;
                return induce_comodule(x, n).report;
            } else {
                if (!check_coring_comodule(x).ok()) return std::nullopt;
                return induce_coring_comodule(x, n).report;
            }
        },
        s);
}

inline std::vector<int> window_degrees(int lo, int hi, std::optional<int> below, std::optional<int> above) {
    std::vector<int> out;
    for (int d = lo; d <= hi; ++d) {
        if (below && d >= *below) continue;
        if (above && d <= *above) continue;
        out.push_back(d);
    }
    return out;
}

}  // namespace detail

template <ExactField K>
SearchResult<K> search_counterexample(const K& f, const SearchConfig& cfg) {
    if (cfg.trials < 1) throw DomainError("search needs at least one trial");
    if (cfg.window_lo > cfg.window_hi) throw DomainError("empty search window");
    if (cfg.max_dim < 0) throw DomainError("negative max dimension");

    using detail::CarrierWindow;
    const bool respect = cfg.policy == HypothesisPolicy::respect;
    std::vector<CarrierWindow> windows;
    // hypothesis-carrying carriers come first: B (comodule), A and B (coring)
    std::vector<std::size_t> negative_carriers, positive_carriers;
    switch (cfg.mode) {
        case StructureKind::comonoid:
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi, {}, {})});
            break;
        case StructureKind::comodule:
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi,
                                                      respect ? std::optional<int>(0) : std::nullopt, {})});
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi, {}, {})});
            negative_carriers.push_back(0);
            break;
        case StructureKind::coring_comodule:
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi, {},
                                                      respect ? std::optional<int>(0) : std::nullopt)});
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi,
                                                      respect ? std::optional<int>(0) : std::nullopt, {})});
            windows.push_back({detail::window_degrees(cfg.window_lo, cfg.window_hi, {}, {})});
            positive_carriers.push_back(0);
            negative_carriers.push_back(1);
            break;
    }
    std::size_t slots = 0;
    for (auto& w : windows) slots += w.degrees.size();

    // violate: some hypothesis must fail for the dims vector to be eligible
    auto eligible = [&](const std::vector<int>& dims) {
        bool any = false;
        for (int d : dims) any = any || d > 0;
        if (!any) return false;
        if (cfg.policy != HypothesisPolicy::violate || cfg.mode == StructureKind::comonoid) return true;
        std::size_t offset = 0;
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const auto& degs = windows[w].degrees;
            for (std::size_t i = 0; i < degs.size(); ++i) {
                const int dim = dims[offset + i];
                if (dim == 0) continue;
                bool neg = std::find(negative_carriers.begin(), negative_carriers.end(), w) != negative_carriers.end();
                bool pos = std::find(positive_carriers.begin(), positive_carriers.end(), w) != positive_carriers.end();
                if ((neg && degs[i] >= 0) || (pos && degs[i] <= 0)) return true;
            }
            offset += degs.size();
        }
        return false;
    };

    SearchResult<K> result;
    auto attempt = [&](const std::vector<int>& dims, detail::CoefficientFeed feed) -> bool {
        ++result.trials_run;
        try {
            auto s = detail::build_candidate(f, cfg.mode, windows, dims, feed);
            auto report = detail::evaluate(s, cfg.n);
            if (!report) return false;
            ++result.valid_candidates;
            if (report->green()) return false;
            result.hit = SearchHit<K>{std::move(s), cfg.n, std::move(*report), result.trials_run - 1};
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    auto unknowns = [&](const std::vector<int>& dims) -> std::size_t {
        detail::CoefficientFeed counter;
        try {
            detail::build_candidate(f, cfg.mode, windows, dims, counter);
        } catch (const Error&) {
        }
        return counter.used;
    };
    static constexpr int values[3] = {0, 1, -1};
    static constexpr std::size_t grid_limit = 729;  // 3^6

    // phase 1: dimension vectors, then the full coefficient grid
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < slots && combos <= 200000; ++i) combos *= static_cast<std::uint64_t>(cfg.max_dim + 1);
    std::vector<std::vector<int>> dim_vectors;
    if (combos <= 200000) {
        std::vector<int> v(slots, 0);
        for (std::uint64_t c = 0; c < combos; ++c) {
            std::uint64_t x = c;
            for (std::size_t i = slots; i-- > 0;) {
                v[i] = static_cast<int>(x % static_cast<std::uint64_t>(cfg.max_dim + 1));
                x /= static_cast<std::uint64_t>(cfg.max_dim + 1);
            }
            if (eligible(v)) dim_vectors.push_back(v);
        }
        std::stable_sort(dim_vectors.begin(), dim_vectors.end(), [](const auto& a, const auto& b) {
            int sa = 0, sb = 0;
            for (int x : a) sa += x;
            for (int x : b) sb += x;
            return sa != sb ? sa < sb : a < b;
        });
    }
    for (const auto& dims : dim_vectors) {
        const std::size_t u = unknowns(dims);
        std::size_t grid = 1;
        for (std::size_t i = 0; i < u && grid <= grid_limit; ++i) grid *= 3;
        if (grid > grid_limit) continue;
        for (std::size_t g = 0; g < grid; ++g) {
            if (result.trials_run >= cfg.trials) return result;
            detail::CoefficientFeed feed;
            std::size_t x = g;
            for (std::size_t i = 0; i < u; ++i) {
                feed.values.push_back(values[x % 3]);
                x /= 3;
            }
            if (attempt(dims, std::move(feed))) return result;
        }
    }

    // phase 2: seeded random sampling
    Rng rng(cfg.seed);
    std::uniform_int_distribution<int> dim_dist(0, cfg.max_dim), coeff(0, 2);
    int stalls = 0;
    while (result.trials_run < cfg.trials) {
        std::vector<int> dims(slots);
        for (auto& d : dims) d = dim_dist(rng);
        if (!eligible(dims)) {
            if (++stalls > 100000) break;
            continue;
        }
        detail::CoefficientFeed feed;
        const std::size_t u = unknowns(dims);
        for (std::size_t i = 0; i < u; ++i) feed.values.push_back(values[coeff(rng)]);
        if (attempt(dims, std::move(feed))) return result;
    }
    return result;
}

}  // namespace coalg
