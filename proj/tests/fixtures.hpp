#pragma once

// The shipped fixtures, built in code.  data/fixtures/*.json are exactly
// emit_workspace of these workspaces.

#include <fstream>
#include <sstream>
#include <string>

#include "coalg/coalg.hpp"

namespace fixtures {

using namespace coalg;
using Q = Rationals;
using M = Matrix<Q>;

inline M mat(std::size_t r, std::size_t c, std::initializer_list<long> v) { return M::from_ints(Q{}, r, c, v); }

/// X_0 = <x>, X_-1 = <a>, dx = a, delta x = x(x)x, delta a = a(x)x + x(x)a.
inline Comonoid<Q> cx() {
    Q f;
    GradedModule<Q> x(f, Support{{0, {"x"}}, {-1, {"a"}}});
    ChainComplex<Q> c(x, GradedMap<Q>(x, x, -1, {{0, mat(1, 1, {1})}}));
    // (X(x)X)_0 = <x(x)x>, (X(x)X)_-1 = <a(x)x, x(x)a>
    return Comonoid<Q>(c, GradedMap<Q>(x, tensor_modules(x, x), 0, {{0, mat(1, 1, {1})}, {-1, mat(2, 1, {1, 1})}}));
}

/// B_-2 = <b>, B_-4 = <c>, d = 0, delta c = b(x)b.
inline Comonoid<Q> k2() {
    Q f;
    GradedModule<Q> b(f, Support{{-2, {"b"}}, {-4, {"c"}}});
    return Comonoid<Q>(ChainComplex<Q>(b), GradedMap<Q>(b, tensor_modules(b, b), 0, {{-4, mat(1, 1, {1})}}));
}

/// B_-1 = <b> with zero comultiplication.
inline Comonoid<Q> trivial_b() {
    Q f;
    GradedModule<Q> b(f, Support{{-1, {"b"}}});
    return Comonoid<Q>(ChainComplex<Q>(b), GradedMap<Q>::zero(b, tensor_modules(b, b), 0));
}

/// M_1 = <m1>, M_0 = <m0> over trivial_b, delta m0 = m1(x)b.
inline Comodule<Q> m1() {
    Q f;
    auto b = trivial_b();
    GradedModule<Q> m(f, Support{{1, {"m1"}}, {0, {"m0"}}});
    return Comodule<Q>(b, ChainComplex<Q>(m),
                       GradedMap<Q>(m, tensor_modules(m, b.carrier.module()), 0, {{0, mat(1, 1, {1})}}));
}

/// A_1 = <a1>, A_2 = <a2>, a1 a1 = a2.
inline Monoid<Q> a1() {
    Q f;
    GradedModule<Q> a(f, Support{{1, {"a1"}}, {2, {"a2"}}});
    return Monoid<Q>(ChainComplex<Q>(a), GradedMap<Q>(tensor_modules(a, a), a, 0, {{2, mat(1, 1, {1})}}));
}

/// M_0 = <m>, M_1 = <m'> over a1(), m a1 = m'.
inline RightModule<Q> ma() {
    Q f;
    auto a = a1();
    GradedModule<Q> m(f, Support{{0, {"m"}}, {1, {"m'"}}});
    auto ma = tensor_modules(m, a.carrier.module());
    // (M(x)A)_1 = <m(x)a1>
    return RightModule<Q>(a, ChainComplex<Q>(m), GradedMap<Q>(ma, m, 0, {{1, mat(1, 1, {1})}}));
}

/// B_-1 = <b> as an a1()-coring with zero actions and zero comultiplication.
inline Coring<Q> crb() { return Coring<Q>::with_zero_actions(a1(), trivial_b()); }

/// ma() with coaction m |-> class of m'(x)b (which is zero in M (x)_A B).
inline CoringComodule<Q> crm() {
    auto b = crb();
    auto m = ma();
    auto rt = relative_tensor(m, b.as_left());
    const auto& plain = tensor_modules(m.carrier.module(), b.carrier.module());
    GradedMap<Q> raw(m.carrier.module(), plain, 0, {{0, mat(1, 1, {1})}});
    return CoringComodule<Q>(b, m, compose(rt.projection, raw));
}

/// A_0 = <e> with e e = e acting as the identity on M_1 = <m'> -> M_0 = <m>,
/// over B_-1 = <b> with zero coaction: the degree-0 generator breaks the
/// action square at n = 0.
inline CoringComodule<Q> idempotent_counterexample() {
    Q f;
    GradedModule<Q> am(f, Support{{0, {"e"}}});
    Monoid<Q> a(ChainComplex<Q>(am), GradedMap<Q>(tensor_modules(am, am), am, 0, {{0, mat(1, 1, {1})}}));
    GradedModule<Q> mm(f, Support{{0, {"m"}}, {1, {"m'"}}});
    ChainComplex<Q> x(mm, GradedMap<Q>(mm, mm, -1, {{1, mat(1, 1, {1})}}));
    RightModule<Q> m(a, x,
                     GradedMap<Q>(tensor_modules(mm, am), mm, 0, {{0, mat(1, 1, {1})}, {1, mat(1, 1, {1})}}));
    auto b = Coring<Q>::with_zero_actions(a, trivial_b());
    auto rt = relative_tensor(m, b.as_left());
    return CoringComodule<Q>(b, m, GradedMap<Q>::zero(mm, rt.complex.module(), 0));
}

inline Workspace<Q> cx_workspace() {
    Workspace<Q> ws{Q{}};
    auto c = cx();
    ws.complexes.emplace("CX", c.carrier);
    ws.comonoids.emplace("X", ComonoidEntry<Q>{"CX", c});
    return ws;
}

inline Workspace<Q> k2_workspace() {
    Workspace<Q> ws{Q{}};
    auto c = k2();
    ws.complexes.emplace("K2", c.carrier);
    ws.comonoids.emplace("B", ComonoidEntry<Q>{"K2", c});
    return ws;
}

inline Workspace<Q> m1_workspace() {
    Workspace<Q> ws{Q{}};
    auto m = m1();
    ws.complexes.emplace("Bc", m.coalgebra.carrier);
    ws.complexes.emplace("Mc", m.carrier);
    ws.comonoids.emplace("B", ComonoidEntry<Q>{"Bc", m.coalgebra});
    ws.comodules.emplace("M1", ComoduleEntry<Q>{"B", "Mc", m});
    return ws;
}

inline Workspace<Q> coring_workspace(const CoringComodule<Q>& cm, const std::string& monoid = "A1") {
    Workspace<Q> ws{Q{}};
    ws.complexes.emplace("Ac", cm.coring.algebra.carrier);
    ws.complexes.emplace("Bc", cm.coring.carrier);
    ws.complexes.emplace("Mc", cm.module.carrier);
    ws.monoids.emplace(monoid, MonoidEntry<Q>{"Ac", cm.coring.algebra});
    ws.modules.emplace("MA", ModuleEntry<Q>{monoid, "Mc", cm.module});
    ws.corings.emplace("CRB", CoringEntry<Q>{monoid, "Bc", cm.coring});
    ws.coring_comodules.emplace("CRM", CoringComoduleEntry<Q>{"CRB", "MA", cm});
    return ws;
}

inline std::string path(const std::string& name) { return std::string(COALG_FIXTURE_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures
