#pragma once

// Non-counital comonoids, comodules, non-unital monoids, modules, corings
// and comodules over corings, all on chain complexes, with exact axiom
// checkers.  Every identity is compared as matrices after an explicit
// associator, and failures carry the first basis vector where the two sides
// differ.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coalg/complex.hpp"
#include "coalg/error.hpp"
#include "coalg/graded.hpp"

namespace coalg {

struct Check {
    std::string name;
    bool pass = true;
    std::optional<Witness> witness;

    friend bool operator==(const Check&, const Check&) = default;
};

struct AxiomReport {
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::optional<Witness> first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return c.witness;
        return std::nullopt;
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void add(std::string name, std::optional<Witness> failure) {
        if (failure) failure->identity = name;
        checks.push_back({std::move(name), !failure.has_value(), std::move(failure)});
    }

    void absorb(const std::string& prefix, const AxiomReport& other) {
        for (auto c : other.checks) {
            c.name = prefix + "/" + c.name;
            if (c.witness) c.witness->identity = c.name;
            checks.push_back(std::move(c));
        }
    }
};

namespace detail {

template <ExactField K>
void require_map(const GradedMap<K>& f, const GradedModule<K>& source, const GradedModule<K>& target,
                 const char* what) {
    if (f.degree() != 0) throw DimensionError(std::string(what) + " must have degree 0");
    if (!(f.source() == source) || !(f.target() == target))
        throw ModuleMismatch(std::string(what) + " has the wrong source or target");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Comonoids and comodules

template <ExactField K>
struct Comonoid {
    ChainComplex<K> carrier;
    GradedMap<K> delta;  ///< X -> X (x) X

    Comonoid(ChainComplex<K> x, GradedMap<K> d) : carrier(std::move(x)), delta(std::move(d)) {
        detail::require_map(delta, carrier.module(), tensor_modules(carrier.module(), carrier.module()),
                            "comultiplication");
    }
};

template <ExactField K>
AxiomReport check_comonoid(const Comonoid<K>& c) {
    const auto& x = c.carrier;
    const auto id = GradedMap<K>::identity(x.module());
    AxiomReport r;
    r.add("chain-map", chain_map_defect(x, tensor_complexes(x, x), c.delta));
    auto left = compose(reassociate(x.module(), x.module(), x.module()), compose(tensor_maps(c.delta, id), c.delta));
    auto right = compose(tensor_maps(id, c.delta), c.delta);
    r.add("coassociativity", first_difference(left, right));
    return r;
}

template <ExactField K>
struct Comodule {
    Comonoid<K> coalgebra;
    ChainComplex<K> carrier;
    GradedMap<K> coaction;  ///< M -> M (x) B

    Comodule(Comonoid<K> b, ChainComplex<K> m, GradedMap<K> rho)
        : coalgebra(std::move(b)), carrier(std::move(m)), coaction(std::move(rho)) {
        detail::require_map(coaction, carrier.module(), tensor_modules(carrier.module(), coalgebra.carrier.module()),
                            "coaction");
    }
};

template <ExactField K>
AxiomReport check_comodule(const Comodule<K>& m) {
    const auto& b = m.coalgebra.carrier;
    const auto& x = m.carrier;
    AxiomReport r;
    r.absorb("coalgebra", check_comonoid(m.coalgebra));
    r.add("chain-map", chain_map_defect(x, tensor_complexes(x, b), m.coaction));
    auto left = compose(reassociate(x.module(), b.module(), b.module()),
                        compose(tensor_maps(m.coaction, GradedMap<K>::identity(b.module())), m.coaction));
    auto right = compose(tensor_maps(GradedMap<K>::identity(x.module()), m.coalgebra.delta), m.coaction);
    r.add("coassociativity", first_difference(left, right));
    return r;
}

/// X (x) B with coaction (X (x) B) -> X (x) (B (x) B) -> (X (x) B) (x) B.
template <ExactField K>
Comodule<K> cofree_comodule(const ChainComplex<K>& x, const Comonoid<K>& b) {
    if (!(x.field() == b.carrier.field())) throw FieldMismatch();
    const auto& bm = b.carrier.module();
    auto rho = compose(reassociate_inverse(x.module(), bm, bm),
                       tensor_maps(GradedMap<K>::identity(x.module()), b.delta));
    return Comodule<K>(b, tensor_complexes(x, b.carrier), std::move(rho));
}

// ---------------------------------------------------------------------------
// Monoids and modules

template <ExactField K>
struct Monoid {
    ChainComplex<K> carrier;
    GradedMap<K> mu;  ///< A (x) A -> A

    Monoid(ChainComplex<K> a, GradedMap<K> m) : carrier(std::move(a)), mu(std::move(m)) {
        detail::require_map(mu, tensor_modules(carrier.module(), carrier.module()), carrier.module(),
                            "multiplication");
    }

    /// The zero monoid on the zero complex.
    static Monoid zero(const K& field) {
        GradedModule<K> z(field);
        return Monoid(ChainComplex<K>(z), GradedMap<K>::zero(tensor_modules(z, z), z, 0));
    }

    friend bool operator==(const Monoid& a, const Monoid& b) { return a.carrier == b.carrier && a.mu == b.mu; }
};

template <ExactField K>
AxiomReport check_monoid(const Monoid<K>& a) {
    const auto& x = a.carrier;
    const auto id = GradedMap<K>::identity(x.module());
    AxiomReport r;
    r.add("chain-map", chain_map_defect(tensor_complexes(x, x), x, a.mu));
    auto left = compose(a.mu, tensor_maps(a.mu, id));
    auto right = compose(compose(a.mu, tensor_maps(id, a.mu)), reassociate(x.module(), x.module(), x.module()));
    r.add("associativity", first_difference(left, right));
    return r;
}

template <ExactField K>
struct RightModule {
    Monoid<K> algebra;
    ChainComplex<K> carrier;
    GradedMap<K> action;  ///< M (x) A -> M

    RightModule(Monoid<K> a, ChainComplex<K> m, GradedMap<K> act)
        : algebra(std::move(a)), carrier(std::move(m)), action(std::move(act)) {
        detail::require_map(action, tensor_modules(carrier.module(), algebra.carrier.module()), carrier.module(),
                            "right action");
    }
};

template <ExactField K>
struct LeftModule {
    Monoid<K> algebra;
    ChainComplex<K> carrier;
    GradedMap<K> action;  ///< A (x) M -> M

    LeftModule(Monoid<K> a, ChainComplex<K> m, GradedMap<K> act)
        : algebra(std::move(a)), carrier(std::move(m)), action(std::move(act)) {
        detail::require_map(action, tensor_modules(algebra.carrier.module(), carrier.module()), carrier.module(),
                            "left action");
    }
};

template <ExactField K>
AxiomReport check_right_module(const RightModule<K>& m, bool include_algebra = true) {
    const auto& a = m.algebra.carrier;
    const auto& x = m.carrier;
    AxiomReport r;
    if (include_algebra) r.absorb("algebra", check_monoid(m.algebra));
    r.add("chain-map", chain_map_defect(tensor_complexes(x, a), x, m.action));
    auto left = compose(m.action, tensor_maps(m.action, GradedMap<K>::identity(a.module())));
    auto right = compose(compose(m.action, tensor_maps(GradedMap<K>::identity(x.module()), m.algebra.mu)),
                         reassociate(x.module(), a.module(), a.module()));
    r.add("associativity", first_difference(left, right));
    return r;
}

template <ExactField K>
AxiomReport check_left_module(const LeftModule<K>& m, bool include_algebra = true) {
    const auto& a = m.algebra.carrier;
    const auto& x = m.carrier;
    AxiomReport r;
    if (include_algebra) r.absorb("algebra", check_monoid(m.algebra));
    r.add("chain-map", chain_map_defect(tensor_complexes(a, x), x, m.action));
    auto left = compose(m.action, tensor_maps(m.algebra.mu, GradedMap<K>::identity(x.module())));
    auto right = compose(compose(m.action, tensor_maps(GradedMap<K>::identity(a.module()), m.action)),
                         reassociate(a.module(), a.module(), x.module()));
    r.add("associativity", first_difference(left, right));
    return r;
}

// ---------------------------------------------------------------------------
// Relative tensor products

template <ExactField K>
struct RelativeTensor {
    ChainComplex<K> complex;  ///< M (x)_A B
    GradedMap<K> projection;  ///< M (x) B -> M (x)_A B
    GradedMap<K> section;     ///< M (x)_A B -> M (x) B, canonical complement
};

/// The relation map (M (x) A) (x) B -> M (x) B, m a (x) b - m (x) a b.
template <ExactField K>
GradedMap<K> balancing_relations(const RightModule<K>& m, const LeftModule<K>& b) {
    const auto& mm = m.carrier.module();
    const auto& am = m.algebra.carrier.module();
    const auto& bm = b.carrier.module();
    return tensor_maps(m.action, GradedMap<K>::identity(bm)) -
           compose(tensor_maps(GradedMap<K>::identity(mm), b.action), reassociate(mm, am, bm));
}

/// M (x)_A B as the degreewise cokernel of the balancing relations, with the
/// induced differential.
template <ExactField K>
RelativeTensor<K> relative_tensor(const RightModule<K>& m, const LeftModule<K>& b) {
    if (!(m.algebra == b.algebra)) throw ModuleMismatch("relative tensor over different monoids");
    auto plain = tensor_complexes(m.carrier, b.carrier);
    auto rel = balancing_relations(m, b);
    std::map<int, Matrix<K>> sub;
    for (auto& [k, labels] : plain.module().support()) sub.emplace(k, rel.block(k));
    auto q = quotient(plain.module(), sub, class_label);
    auto d = compose(q.projection, compose(plain.differential(), q.section));
    return {ChainComplex<K>(q.module, std::move(d)), std::move(q.projection), std::move(q.section)};
}

/// Right A-action on M (x)_A B induced by a right action on B.
template <ExactField K>
GradedMap<K> induced_right_action(const RelativeTensor<K>& rt, const ChainComplex<K>& m, const ChainComplex<K>& b,
                                  const Monoid<K>& a, const GradedMap<K>& b_right) {
    const auto& am = a.carrier.module();
    auto lifted = tensor_maps(rt.section, GradedMap<K>::identity(am));
    auto acted = compose(tensor_maps(GradedMap<K>::identity(m.module()), b_right),
                         compose(reassociate(m.module(), b.module(), am), lifted));
    return compose(rt.projection, acted);
}

/// Left A-action on B (x)_A N induced by a left action on B.
template <ExactField K>
GradedMap<K> induced_left_action(const RelativeTensor<K>& rt, const ChainComplex<K>& b, const ChainComplex<K>& n,
                                 const Monoid<K>& a, const GradedMap<K>& b_left) {
    const auto& am = a.carrier.module();
    auto lifted = tensor_maps(GradedMap<K>::identity(am), rt.section);
    auto acted = compose(tensor_maps(b_left, GradedMap<K>::identity(n.module())),
                         compose(reassociate_inverse(am, b.module(), n.module()), lifted));
    return compose(rt.projection, acted);
}

// ---------------------------------------------------------------------------
// Corings and their comodules

template <ExactField K>
struct Coring {
    Monoid<K> algebra;
    ChainComplex<K> carrier;
    GradedMap<K> left_action;   ///< A (x) B -> B
    GradedMap<K> right_action;  ///< B (x) A -> B
    GradedMap<K> delta;         ///< B -> B (x)_A B

    Coring(Monoid<K> a, ChainComplex<K> b, GradedMap<K> left, GradedMap<K> right, GradedMap<K> d)
        : algebra(std::move(a)),
          carrier(std::move(b)),
          left_action(std::move(left)),
          right_action(std::move(right)),
          delta(std::move(d)) {
        detail::require_map(left_action, tensor_modules(algebra.carrier.module(), carrier.module()), carrier.module(),
                            "left action");
        detail::require_map(right_action, tensor_modules(carrier.module(), algebra.carrier.module()),
                            carrier.module(), "right action");
        detail::require_map(delta, carrier.module(), cotensor().complex.module(), "coring comultiplication");
    }

    LeftModule<K> as_left() const { return LeftModule<K>(algebra, carrier, left_action); }
    RightModule<K> as_right() const { return RightModule<K>(algebra, carrier, right_action); }
    /// B (x)_A B
    RelativeTensor<K> cotensor() const { return relative_tensor(as_right(), as_left()); }

    /// A comonoid regarded as a coring with zero actions; then B (x)_A B is
    /// B (x) B with the identity as projection.
    static Coring with_zero_actions(const Monoid<K>& a, const Comonoid<K>& c) {
        const auto& am = a.carrier.module();
        const auto& bm = c.carrier.module();
        GradedMap<K> left = GradedMap<K>::zero(tensor_modules(am, bm), bm, 0);
        GradedMap<K> right = GradedMap<K>::zero(tensor_modules(bm, am), bm, 0);
        auto rt = relative_tensor(RightModule<K>(a, c.carrier, right), LeftModule<K>(a, c.carrier, left));
        return Coring(a, c.carrier, left, right, compose(rt.projection, c.delta));
    }
};

namespace detail {

/// Both ways around (X (x)_A B) -> (X (x)_A B (x)_A B) for a right
/// B-coaction rho on a right A-module X, compared in the quotient of
/// (X (x) B) (x) B by the balancing relations in either slot.
template <ExactField K>
std::optional<Witness> coassociativity_over(const RightModule<K>& x, const Coring<K>& b,
                                            const RelativeTensor<K>& xb, const GradedMap<K>& rho) {
    const auto& xm = x.carrier.module();
    const auto& bm = b.carrier.module();
    const auto idb = GradedMap<K>::identity(bm);
    auto bb = b.cotensor();

    auto rel_xb = balancing_relations(x, b.as_left());
    auto rel_bb = balancing_relations(b.as_right(), b.as_left());
    auto slot1 = tensor_maps(rel_xb, idb);
    auto slot2 = compose(reassociate_inverse(xm, bm, bm), tensor_maps(GradedMap<K>::identity(xm), rel_bb));
    auto ambient = tensor_modules(tensor_modules(xm, bm), bm);
    std::map<int, Matrix<K>> sub;
    for (auto& [k, labels] : ambient.support()) sub.emplace(k, hstack(slot1.block(k), slot2.block(k)));
    auto triple = quotient(ambient, sub, class_label);

    auto lifted = compose(xb.section, rho);
    auto first = compose(triple.projection, compose(tensor_maps(lifted, idb), lifted));
    auto second = compose(triple.projection,
                          compose(reassociate_inverse(xm, bm, bm),
                                  compose(tensor_maps(GradedMap<K>::identity(xm), compose(bb.section, b.delta)),
                                          lifted)));
    return first_difference(first, second);
}

}  // namespace detail

template <ExactField K>
AxiomReport check_coring(const Coring<K>& b) {
    const auto& am = b.algebra.carrier.module();
    const auto& bm = b.carrier.module();
    AxiomReport r;
    r.absorb("algebra", check_monoid(b.algebra));
    r.absorb("left", check_left_module(b.as_left(), false));
    r.absorb("right", check_right_module(b.as_right(), false));
    auto lhs = compose(b.right_action, tensor_maps(b.left_action, GradedMap<K>::identity(am)));
    auto rhs = compose(compose(b.left_action, tensor_maps(GradedMap<K>::identity(am), b.right_action)),
                       reassociate(am, bm, am));
    r.add("bimodule", first_difference(lhs, rhs));

    auto bb = b.cotensor();
    r.add("chain-map", chain_map_defect(b.carrier, bb.complex, b.delta));
    auto ract = induced_right_action(bb, b.carrier, b.carrier, b.algebra, b.right_action);
    r.add("right-linearity", first_difference(compose(b.delta, b.right_action),
                                              compose(ract, tensor_maps(b.delta, GradedMap<K>::identity(am)))));
    auto lact = induced_left_action(bb, b.carrier, b.carrier, b.algebra, b.left_action);
    r.add("left-linearity", first_difference(compose(b.delta, b.left_action),
                                             compose(lact, tensor_maps(GradedMap<K>::identity(am), b.delta))));
    r.add("coassociativity", detail::coassociativity_over(b.as_right(), b, bb, b.delta));
    return r;
}

template <ExactField K>
struct CoringComodule {
    Coring<K> coring;
    RightModule<K> module;
    GradedMap<K> coaction;  ///< M -> M (x)_A B

    CoringComodule(Coring<K> b, RightModule<K> m, GradedMap<K> rho)
        : coring(std::move(b)), module(std::move(m)), coaction(std::move(rho)) {
        if (!(module.algebra == coring.algebra)) throw ModuleMismatch("module and coring over different monoids");
        detail::require_map(coaction, module.carrier.module(), tensor().complex.module(), "coring coaction");
    }

    /// M (x)_A B
    RelativeTensor<K> tensor() const { return relative_tensor(module, coring.as_left()); }
};

template <ExactField K>
AxiomReport check_coring_comodule(const CoringComodule<K>& m, bool include_coring = true) {
    const auto& am = m.coring.algebra.carrier.module();
    AxiomReport r;
    if (include_coring) r.absorb("coring", check_coring(m.coring));
    r.absorb("module", check_right_module(m.module, false));
    auto mb = m.tensor();
    r.add("chain-map", chain_map_defect(m.module.carrier, mb.complex, m.coaction));
    auto ract = induced_right_action(mb, m.module.carrier, m.coring.carrier, m.coring.algebra, m.coring.right_action);
    r.add("A-linearity", first_difference(compose(m.coaction, m.module.action),
                                          compose(ract, tensor_maps(m.coaction, GradedMap<K>::identity(am)))));
    r.add("coassociativity", detail::coassociativity_over(m.module, m.coring, mb, m.coaction));
    return r;
}

}  // namespace coalg
