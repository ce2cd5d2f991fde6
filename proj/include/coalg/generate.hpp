#pragma once

// Seeded random instances for property tests and the acceptance suite.
//
// Complexes: random blocks built bottom-up, each new differential composed
// with a kernel basis of the one below it so d^2 = 0 holds by construction.
//
// Comonoids: direct sums of divided-power towers x_1..x_k in degrees -i*w
// with delta(x_i) = c * sum_{a+b=i, a,b>=1} x_a (x) x_b, plus acyclic
// pieces y -> z with zero comultiplication, conjugated by a random degree-0
// isomorphism.  These families are coassociative by construction, which
// rejection sampling would almost never hit.
//
// Comodules: cofree X (x) B plus a summand with zero coaction, conjugated.
//
// Coring comodules: A is a truncated polynomial monoid in positive degrees,
// B a comonoid in negative degrees seen as a coring with zero actions, and M = (N (x) E) (x) B where
// N is a truncated free A-module and E a random complex, with A acting
// through N and B coacting through its comultiplication.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coalg/complex.hpp"
#include "coalg/graded.hpp"
#include "coalg/structures.hpp"

namespace coalg {

using Rng = std::mt19937_64;

namespace gen {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <ExactField K>
typename K::value_type small_scalar(const K& f, Rng& rng, int bound = 2) {
    return f.from_int(uniform(rng, -bound, bound));
}

template <ExactField K>
typename K::value_type nonzero_scalar(const K& f, Rng& rng) {
    for (;;) {
        auto v = small_scalar(f, rng, 3);
        if (!f.is_zero(v)) return v;
    }
}

/// Random module with dims in [0, max_dim] on [lo, hi]; labels prefix+index.
template <ExactField K>
GradedModule<K> random_module(const K& f, Rng& rng, int lo, int hi, int max_dim, const std::string& prefix) {
    Support s;
    int counter = 0;
    for (int d = lo; d <= hi; ++d) {
        int n = uniform(rng, 0, max_dim);
        for (int j = 0; j < n; ++j) s[d].push_back(prefix + std::to_string(counter++));
    }
    return GradedModule<K>(f, std::move(s));
}

template <ExactField K>
Matrix<K> random_matrix(const K& f, Rng& rng, std::size_t r, std::size_t c, double density = 0.6) {
    std::bernoulli_distribution keep(density);
    Matrix<K> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng)) m(i, j) = small_scalar(f, rng);
    return m;
}

/// Random homogeneous map of the given degree.
template <ExactField K>
GradedMap<K> random_map(Rng& rng, const GradedModule<K>& source, const GradedModule<K>& target, int degree) {
    typename GradedMap<K>::Blocks b;
    for (auto& [i, labels] : source.support())
        if (target.dim(i + degree) > 0)
            b.emplace(i, random_matrix(source.field(), rng, target.dim(i + degree), labels.size()));
    return GradedMap<K>(source, target, degree, std::move(b));
}

/// Random differential on a module: built from the bottom degree up, each
/// block is (kernel basis of the block below) * (random coefficients).
template <ExactField K>
GradedMap<K> random_differential(Rng& rng, const GradedModule<K>& m) {
    const K& f = m.field();
    typename GradedMap<K>::Blocks b;
    std::bernoulli_distribution zero_block(0.15);
    for (auto& [i, labels] : m.support()) {
        const std::size_t below = m.dim(i - 1);
        if (below == 0 || zero_block(rng)) continue;
        auto it = b.find(i - 1);
        Matrix<K> ker = it == b.end() ? Matrix<K>::identity(f, below) : kernel_basis(it->second);
        if (ker.cols() == 0) continue;
        b.emplace(i, ker * random_matrix(f, rng, ker.cols(), labels.size(), 0.7));
    }
    return GradedMap<K>(m, m, -1, std::move(b));
}

template <ExactField K>
ChainComplex<K> random_complex(const K& f, Rng& rng, int lo, int hi, int max_dim, const std::string& prefix = "e") {
    auto m = random_module(f, rng, lo, hi, max_dim, prefix);
    return ChainComplex<K>(m, random_differential(rng, m));
}

/// Random degree-0 automorphism: per degree a product of unit lower and
/// upper triangular matrices with a random permutation, always invertible.
template <ExactField K>
GradedMap<K> random_automorphism(Rng& rng, const GradedModule<K>& m) {
    const K& f = m.field();
    typename GradedMap<K>::Blocks b;
    for (auto& [d, labels] : m.support()) {
        const std::size_t n = labels.size();
        Matrix<K> lower = Matrix<K>::identity(f, n), upper = Matrix<K>::identity(f, n), perm(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                lower(i, j) = small_scalar(f, rng, 1);
                upper(j, i) = small_scalar(f, rng, 1);
            }
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        for (std::size_t i = 0; i < n; ++i) perm(i, p[i]) = f.one();
        b.emplace(d, perm * lower * upper);
    }
    return GradedMap<K>(m, m, 0, std::move(b));
}

template <ExactField K>
GradedMap<K> invert(const GradedMap<K>& phi) {
    typename GradedMap<K>::Blocks b;
    for (auto& [d, labels] : phi.source().support()) b.emplace(d, inverse(phi.block(d)));
    return GradedMap<K>(phi.target(), phi.source(), -phi.degree(), std::move(b));
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Transport of structure along degree-0 automorphisms of the carrier.

template <ExactField K>
ChainComplex<K> transport(const ChainComplex<K>& x, const GradedMap<K>& phi) {
    auto inv = gen::invert(phi);
    return ChainComplex<K>(x.module(), compose(phi, compose(x.differential(), inv)));
}

/// delta |-> (phi (x) phi) delta phi^-1, d |-> phi d phi^-1.
template <ExactField K>
Comonoid<K> transport(const Comonoid<K>& c, const GradedMap<K>& phi) {
    auto inv = gen::invert(phi);
    return Comonoid<K>(transport(c.carrier, phi), compose(tensor_maps(phi, phi), compose(c.delta, inv)));
}

/// coaction |-> (phi (x) 1) coaction phi^-1 over a fixed comonoid.
template <ExactField K>
Comodule<K> transport(const Comodule<K>& m, const GradedMap<K>& phi) {
    auto inv = gen::invert(phi);
    auto id_b = GradedMap<K>::identity(m.coalgebra.carrier.module());
    return Comodule<K>(m.coalgebra, transport(m.carrier, phi),
                       compose(tensor_maps(phi, id_b), compose(m.coaction, inv)));
}

/// mu |-> phi mu (phi^-1 (x) phi^-1).
template <ExactField K>
Monoid<K> transport(const Monoid<K>& a, const GradedMap<K>& phi) {
    auto inv = gen::invert(phi);
    return Monoid<K>(transport(a.carrier, phi), compose(phi, compose(a.mu, tensor_maps(inv, inv))));
}

/// Conjugate the carrier of a coring comodule; the coaction is pushed through
/// (phi (x)_A 1).
template <ExactField K>
CoringComodule<K> transport(const CoringComodule<K>& m, const GradedMap<K>& phi) {
    auto inv = gen::invert(phi);
    const auto& am = m.coring.algebra.carrier.module();
    RightModule<K> moved(m.module.algebra, transport(m.module.carrier, phi),
                         compose(phi, compose(m.module.action, tensor_maps(inv, GradedMap<K>::identity(am)))));
    auto old_rt = m.tensor();
    auto new_rt = relative_tensor(moved, m.coring.as_left());
    auto id_b = GradedMap<K>::identity(m.coring.carrier.module());
    auto rho = compose(new_rt.projection,
                       compose(tensor_maps(phi, id_b), compose(old_rt.section, compose(m.coaction, inv))));
    return CoringComodule<K>(m.coring, std::move(moved), std::move(rho));
}

// ---------------------------------------------------------------------------
// Families

namespace gen {

/// Divided-power tower on x_1..x_k in degrees -i*w (w >= 1).
template <ExactField K>
Comonoid<K> divided_power(const K& f, int k, int w, const typename K::value_type& c, const std::string& prefix) {
    Support s;
    for (int i = 1; i <= k; ++i) s[-i * w].push_back(prefix + std::to_string(i));
    GradedModule<K> m(f, std::move(s));
    auto mm = tensor_modules(m, m);
    typename GradedMap<K>::Blocks b;
    for (int i = 2; i <= k; ++i) {
        const int deg = -i * w;
        Matrix<K> blk(f, mm.dim(deg), 1);
        // basis of (X (x) X)_deg in canonical order: left degree ascending,
        // i.e. left index a from large to small
        std::size_t row = 0;
        for (int a = k; a >= 1; --a) {
            int bi = i - a;
            if (bi < 1 || bi > k) continue;
            blk(row, 0) = c;
            ++row;
        }
        b.emplace(deg, std::move(blk));
    }
    return Comonoid<K>(ChainComplex<K>(m), GradedMap<K>(m, mm, 0, std::move(b)));
}

/// y (degree top) -> z (degree top-1), d(y) = z, zero comultiplication.
template <ExactField K>
Comonoid<K> acyclic_pair(const K& f, int top, const std::string& prefix) {
    GradedModule<K> m(f, Support{{top, {prefix + "y"}}, {top - 1, {prefix + "z"}}});
    typename GradedMap<K>::Blocks db;
    db.emplace(top, Matrix<K>::identity(f, 1));
    ChainComplex<K> x(m, GradedMap<K>(m, m, -1, std::move(db)));
    return Comonoid<K>(x, GradedMap<K>::zero(m, tensor_modules(m, m), 0));
}

/// Direct sum of comonoids: delta lands in the diagonal summands of
/// (X (+) Y) (x) (X (+) Y).
template <ExactField K>
Comonoid<K> direct_sum(const Comonoid<K>& x, const Comonoid<K>& y) {
    const K& f = x.carrier.field();
    auto xm = x.carrier.module(), ym = y.carrier.module();
    auto sm = coalg::direct_sum(xm, ym);
    ChainComplex<K> s(sm, coalg::direct_sum(x.carrier.differential(), y.carrier.differential()));
    auto ss = tensor_modules(sm, sm);
    auto xx = tensor_modules(xm, xm), yy = tensor_modules(ym, ym);
    // embed X (x) X and Y (x) Y into S (x) S via label lookup (labels are
    // disjoint between the summands, so tensor labels are too)
    auto embed = [&](const GradedModule<K>& part) {
        typename GradedMap<K>::Blocks b;
        for (auto& [d, labels] : part.support()) {
            Matrix<K> m(f, ss.dim(d), labels.size());
            const auto& target = ss.labels(d);
            for (std::size_t j = 0; j < labels.size(); ++j) {
                auto it = std::find(target.begin(), target.end(), labels[j]);
                m(static_cast<std::size_t>(it - target.begin()), j) = f.one();
            }
            b.emplace(d, std::move(m));
        }
        return GradedMap<K>(part, ss, 0, std::move(b));
    };
    auto project = [&](const GradedModule<K>& part, bool first) {
        typename GradedMap<K>::Blocks b;
        for (auto& [d, labels] : sm.support()) {
            if (part.dim(d) == 0) continue;
            Matrix<K> m(f, part.dim(d), labels.size());
            const std::size_t offset = first ? 0 : xm.dim(d);
            for (std::size_t j = 0; j < part.dim(d); ++j) m(j, offset + j) = f.one();
            b.emplace(d, std::move(m));
        }
        return GradedMap<K>(sm, part, 0, std::move(b));
    };
    auto delta = compose(embed(xx), compose(x.delta, project(xm, true))) +
                 compose(embed(yy), compose(y.delta, project(ym, false)));
    return Comonoid<K>(std::move(s), std::move(delta));
}

struct ComonoidShape {
    int max_towers = 2;
    int max_length = 3;  ///< generators per tower
    int min_weight = 2;
    int max_weight = 3;
    int max_acyclic = 2;
    int acyclic_top = -2;  ///< highest degree of an acyclic piece
    int acyclic_bottom = -6;

    /// Small coalgebras, for building comodules whose tensor powers stay
    /// manageable.
    static ComonoidShape compact() { return {1, 2, 2, 3, 1, -2, -4}; }
};

/// A random coassociative comonoid; with the default shape its carrier lives
/// in degrees <= -2.
template <ExactField K>
Comonoid<K> random_comonoid(const K& f, Rng& rng, const ComonoidShape& shape = {}, const std::string& prefix = "x") {
    int towers = uniform(rng, 1, shape.max_towers);
    std::optional<Comonoid<K>> acc;
    for (int t = 0; t < towers; ++t) {
        auto piece = divided_power(f, uniform(rng, 1, shape.max_length), uniform(rng, shape.min_weight, shape.max_weight),
                                   nonzero_scalar(f, rng), prefix + std::to_string(t) + "_");
        acc = acc ? direct_sum(*acc, piece) : piece;
    }
    int acyclic = uniform(rng, 0, shape.max_acyclic);
    for (int a = 0; a < acyclic; ++a) {
        auto piece = acyclic_pair(f, uniform(rng, shape.acyclic_bottom + 1, shape.acyclic_top),
                                  prefix + "a" + std::to_string(a));
        acc = direct_sum(*acc, piece);
    }
    return transport(*acc, random_automorphism(rng, acc->carrier.module()));
}

template <ExactField K>
Comodule<K> direct_sum_zero_coaction(const Comodule<K>& m, const ChainComplex<K>& y) {
    const K& f = m.carrier.field();
    const auto& bm = m.coalgebra.carrier.module();
    auto sm = coalg::direct_sum(m.carrier.module(), y.module());
    ChainComplex<K> s(sm, coalg::direct_sum(m.carrier.differential(), y.differential()));
    auto target = tensor_modules(sm, bm);
    auto mb = tensor_modules(m.carrier.module(), bm);
    // M (x) B sits inside (M (+) Y) (x) B at the labels it shares
    typename GradedMap<K>::Blocks emb;
    for (auto& [d, labels] : mb.support()) {
        Matrix<K> e(f, target.dim(d), labels.size());
        const auto& tl = target.labels(d);
        for (std::size_t j = 0; j < labels.size(); ++j)
            e(static_cast<std::size_t>(std::find(tl.begin(), tl.end(), labels[j]) - tl.begin()), j) = f.one();
        emb.emplace(d, std::move(e));
    }
    typename GradedMap<K>::Blocks proj;
    for (auto& [d, labels] : sm.support()) {
        if (m.carrier.module().dim(d) == 0) continue;
        Matrix<K> p(f, m.carrier.module().dim(d), labels.size());
        for (std::size_t j = 0; j < m.carrier.module().dim(d); ++j) p(j, j) = f.one();
        proj.emplace(d, std::move(p));
    }
    auto rho = compose(GradedMap<K>(mb, target, 0, std::move(emb)),
                       compose(m.coaction, GradedMap<K>(sm, m.carrier.module(), 0, std::move(proj))));
    return Comodule<K>(m.coalgebra, std::move(s), std::move(rho));
}

/// Cofree comodule on a random complex in [lo, hi], plus a random summand
/// with zero coaction, conjugated by a random automorphism.
template <ExactField K>
Comodule<K> random_comodule(const Comonoid<K>& b, Rng& rng, int lo, int hi, int max_dim = 2) {
    const K& f = b.carrier.field();
    auto x = random_complex(f, rng, lo, hi, max_dim, "m");
    auto m = cofree_comodule(x, b);
    auto y = random_complex(f, rng, lo, hi, 1, "y");
    auto sum = direct_sum_zero_coaction(m, y);
    return transport(sum, random_automorphism(rng, sum.carrier.module()));
}

/// Truncated polynomial monoid: a_i in degree i*w for i = 1..k,
/// a_i a_j = c a_{i+j} when i + j <= k.
template <ExactField K>
Monoid<K> truncated_polynomial(const K& f, int k, int w, const typename K::value_type& c) {
    Support s;
    for (int i = 1; i <= k; ++i) s[i * w].push_back("a" + std::to_string(i));
    GradedModule<K> m(f, std::move(s));
    auto mm = tensor_modules(m, m);
    typename GradedMap<K>::Blocks b;
    for (auto& [deg, labels] : mm.support()) {
        const int target = deg / w;
        if (target > k) continue;
        Matrix<K> blk(f, 1, labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) blk(0, j) = c;
        b.emplace(deg, std::move(blk));
    }
    return Monoid<K>(ChainComplex<K>(m), GradedMap<K>(mm, m, 0, std::move(b)));
}

/// Right module n_0..n_len over truncated_polynomial(k, w, c), n_j in degree
/// base + j*w, n_j a_i = c n_{i+j} when i + j <= len.  Needs len <= k.
template <ExactField K>
RightModule<K> truncated_free_module(const Monoid<K>& a, int len, int w, int base, const typename K::value_type& c) {
    const K& f = a.carrier.field();
    if (len > static_cast<int>(a.carrier.module().total_dim())) throw DomainError("module longer than the truncated algebra");
    Support s;
    for (int j = 0; j <= len; ++j) s[base + j * w].push_back("n" + std::to_string(j));
    GradedModule<K> m(f, std::move(s));
    const auto& am = a.carrier.module();
    auto ma = tensor_modules(m, am);
    typename GradedMap<K>::Blocks b;
    for (auto& [deg, labels] : ma.support()) {
        const int j = (deg - base) / w;
        if (j > len) continue;
        Matrix<K> blk(f, 1, labels.size());
        for (std::size_t col = 0; col < labels.size(); ++col) blk(0, col) = c;
        b.emplace(deg, std::move(blk));
    }
    return RightModule<K>(a, ChainComplex<K>(m), GradedMap<K>(ma, m, 0, std::move(b)));
}

/// N (x) E with A acting on N: (n (x) e) a = (-1)^{|a||e|} (n a) (x) e.
template <ExactField K>
RightModule<K> tensor_right(const RightModule<K>& n, const ChainComplex<K>& e) {
    const auto& nm = n.carrier.module();
    const auto& em = e.module();
    const auto& am = n.algebra.carrier.module();
    auto id_n = GradedMap<K>::identity(nm);
    auto id_e = GradedMap<K>::identity(em);
    auto act = compose(tensor_maps(n.action, id_e),
                       compose(reassociate_inverse(nm, am, em),
                               compose(tensor_maps(id_n, symmetry(em, am)), reassociate(nm, em, am))));
    return RightModule<K>(n.algebra, tensor_complexes(n.carrier, e), std::move(act));
}

struct CoringShape {
    int max_algebra_length = 2;
    int max_module_length = 2;
    int module_base_lo = -1;
    int module_base_hi = 2;
    int complex_lo = -1;
    int complex_hi = 2;
    int complex_max_dim = 1;
    ComonoidShape coalgebra{1, 2, 1, 2, 1, -1, -3};
    std::size_t max_carrier_dim = 16;  ///< larger draws are rejected
};

/// A coring comodule with A_{<=0} = 0 and B_{>=0} = 0.
template <ExactField K>
CoringComodule<K> random_coring_comodule(const K& f, Rng& rng, const CoringShape& shape = {}) {
    const int w = uniform(rng, 1, 2);
    const auto c_mu = nonzero_scalar(f, rng);
    const int k = uniform(rng, 1, shape.max_algebra_length);
    auto a = truncated_polynomial(f, k, w, c_mu);
    auto n = truncated_free_module(a, uniform(rng, 0, std::min(k, shape.max_module_length)), w,
                                   uniform(rng, shape.module_base_lo, shape.module_base_hi), c_mu);
    auto e = random_complex(f, rng, shape.complex_lo, shape.complex_hi, shape.complex_max_dim, "e");
    if (e.module().is_zero()) e = ChainComplex<K>(GradedModule<K>(f, Support{{0, {"e0"}}}));
    auto ne = tensor_right(n, e);
    auto c = random_comonoid(f, rng, shape.coalgebra, "b");
    auto coring = Coring<K>::with_zero_actions(a, c);
    auto m = tensor_right(ne, c.carrier);
    if (m.carrier.module().total_dim() > shape.max_carrier_dim) return random_coring_comodule(f, rng, shape);
    auto mb = relative_tensor(m, coring.as_left());
    const auto& nem = ne.carrier.module();
    const auto& bm = c.carrier.module();
    auto rho = compose(mb.projection,
                       compose(reassociate_inverse(nem, bm, bm), tensor_maps(GradedMap<K>::identity(nem), c.delta)));
    CoringComodule<K> raw(coring, m, std::move(rho));
    return transport(raw, random_automorphism(rng, m.carrier.module()));
}

}  // namespace gen

}  // namespace coalg
