#pragma once

// Chain complexes (degree -1 differentials), chain maps, homology with
// chosen cycle representatives, the truncation L_n and its quotient map q_n,
// and the homological locality tests that go with it.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coalg/error.hpp"
#include "coalg/graded.hpp"
#include "coalg/matrix.hpp"

namespace coalg {

template <ExactField K>
class ChainComplex {
public:
    /// Throws NotAComplex naming the first degree and basis vector with
    /// d(d(v)) != 0.
    ChainComplex(GradedModule<K> module, GradedMap<K> differential)
        : module_(std::move(module)), d_(std::move(differential)) {
        if (d_.degree() != -1) throw DimensionError("differential must have degree -1");
        if (!(d_.source() == module_) || !(d_.target() == module_))
            throw ModuleMismatch("differential must be an endomorphism of the underlying module");
        auto dd = compose(d_, d_);
        if (auto w = first_difference(dd, GradedMap<K>::zero(module_, module_, -2)))
            throw NotAComplex(w->degree, w->basis);
    }

    /// Zero differential.
    explicit ChainComplex(GradedModule<K> module)
        : ChainComplex(module, GradedMap<K>::zero(module, module, -1)) {}

    const GradedModule<K>& module() const { return module_; }
    const GradedMap<K>& differential() const { return d_; }
    const K& field() const { return module_.field(); }

    friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
        return a.module_ == b.module_ && a.d_ == b.d_;
    }

private:
    GradedModule<K> module_;
    GradedMap<K> d_;
};

template <ExactField K>
ChainComplex<K> validate_complex(const GradedModule<K>& module, const GradedMap<K>& differential) {
    return ChainComplex<K>(module, differential);
}

/// First basis vector where d_target f != f d_source, if any.
template <ExactField K>
std::optional<Witness> chain_map_defect(const ChainComplex<K>& source, const ChainComplex<K>& target,
                                        const GradedMap<K>& f, const std::string& identity = "chain-map") {
    return first_difference(compose(target.differential(), f), compose(f, source.differential()), identity);
}

template <ExactField K>
class ChainMap {
public:
    ChainMap(ChainComplex<K> source, ChainComplex<K> target, GradedMap<K> map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
        if (map_.degree() != 0) throw DimensionError("chain maps have degree 0");
        if (!(map_.source() == source_.module()) || !(map_.target() == target_.module()))
            throw ModuleMismatch("chain map blocks do not match the complexes");
        if (auto w = chain_map_defect(source_, target_, map_))
            throw NotAChainMap("map does not commute with differentials at degree " + std::to_string(w->degree) +
                               " on " + w->basis);
    }

    static ChainMap identity(const ChainComplex<K>& x) { return ChainMap(x, x, GradedMap<K>::identity(x.module())); }

    const ChainComplex<K>& source() const { return source_; }
    const ChainComplex<K>& target() const { return target_; }
    const GradedMap<K>& map() const { return map_; }

private:
    ChainComplex<K> source_;
    ChainComplex<K> target_;
    GradedMap<K> map_;
};

template <ExactField K>
ChainMap<K> compose(const ChainMap<K>& g, const ChainMap<K>& f) {
    return ChainMap<K>(f.source(), g.target(), compose(g.map(), f.map()));
}

/// Tensor product with d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
template <ExactField K>
ChainComplex<K> tensor_complexes(const ChainComplex<K>& x, const ChainComplex<K>& y) {
    auto d = tensor_maps(x.differential(), GradedMap<K>::identity(y.module())) +
             tensor_maps(GradedMap<K>::identity(x.module()), y.differential());
    return ChainComplex<K>(tensor_modules(x.module(), y.module()), std::move(d));
}

template <ExactField K>
struct HomologyDegree {
    Matrix<K> representatives;  ///< dim X_i x h_i, cycles representing a basis of H_i
    Matrix<K> coordinates;      ///< h_i x dim X_i, class coordinates of a cycle
};

template <ExactField K>
struct Homology {
    GradedModule<K> module;  ///< labels are "[cycle]"
    std::map<int, HomologyDegree<K>> degrees;

    std::size_t dim(int degree) const { return module.dim(degree); }
};

/// H_i = ker d_i / im d_{i+1}.  Representatives are the kernel basis vectors
/// that rref([boundaries | cycles]) selects as pivots.
template <ExactField K>
Homology<K> homology(const ChainComplex<K>& x) {
    const K& f = x.field();
    const auto& d = x.differential();
    Support labels;
    std::map<int, HomologyDegree<K>> degrees;
    for (auto& [i, basis] : x.module().support()) {
        auto cycles = kernel_basis(d.block(i));
        if (cycles.cols() == 0) continue;
        auto boundaries = image_basis(d.block(i + 1)).basis;
        auto ech = rref(hstack(boundaries, cycles));
        std::vector<std::size_t> chosen;
        for (auto p : ech.pivots)
            if (p >= boundaries.cols()) chosen.push_back(p - boundaries.cols());
        if (chosen.empty()) continue;
        auto reps = cycles.select_columns(chosen);
        auto rows = coordinate_rows(hstack(boundaries, reps));
        std::vector<std::size_t> tail;
        for (std::size_t r = boundaries.cols(); r < rows.rows(); ++r) tail.push_back(r);
        std::vector<std::string> names;
        for (std::size_t j = 0; j < reps.cols(); ++j) names.push_back("[" + describe(x.module(), i, reps.col(j)) + "]");
        labels.emplace(i, std::move(names));
        degrees.emplace(i, HomologyDegree<K>{reps, rows.select_rows(tail)});
    }
    return {GradedModule<K>(f, std::move(labels)), std::move(degrees)};
}

/// Matrices of H_i(f) in the chosen bases, for every degree where the source
/// or target homology is nonzero.
template <ExactField K>
std::map<int, Matrix<K>> homology_map(const ChainMap<K>& f) {
    const K& k = f.map().field();
    auto hs = homology(f.source());
    auto ht = homology(f.target());
    std::set<int> degs;
    for (auto& [i, unused] : hs.degrees) degs.insert(i);
    for (auto& [i, unused] : ht.degrees) degs.insert(i);
    std::map<int, Matrix<K>> out;
    for (int i : degs) {
        auto s = hs.degrees.find(i);
        auto t = ht.degrees.find(i);
        if (s == hs.degrees.end() || t == ht.degrees.end()) {
            out.emplace(i, Matrix<K>(k, ht.dim(i), hs.dim(i)));
            continue;
        }
        out.emplace(i, t->second.coordinates * (f.map().block(i) * s->second.representatives));
    }
    return out;
}

template <ExactField K>
struct Truncation {
    ChainComplex<K> complex;  ///< L_n X
    ChainMap<K> q;            ///< X -> L_n X
    /// L_n X -> X: the identity in degrees <= n and zero in degree n+1.  It is
    /// the lift used by the case-split formulas for induced structure maps.
    GradedMap<K> lower_inclusion;
};

/// (L_n X)_i = X_i for i <= n, X_{n+1} / ker d_{n+1} for i = n+1, 0 above.
/// The degree n+1 basis is the set of pivot columns of d_{n+1}, labelled
/// with a bar.
template <ExactField K>
Truncation<K> truncate(const ChainComplex<K>& x, int n) {
    const K& f = x.field();
    Support low;
    for (auto& [i, labels] : x.module().support())
        if (i <= n + 1) low.emplace(i, labels);
    GradedModule<K> y(f, std::move(low));
    typename GradedMap<K>::Blocks dy_blocks;
    for (auto& [i, m] : x.differential().blocks())
        if (i <= n + 1) dy_blocks.emplace(i, m);
    GradedMap<K> dy(y, y, -1, std::move(dy_blocks));

    std::map<int, Matrix<K>> sub;
    if (y.dim(n + 1) > 0) sub.emplace(n + 1, kernel_basis(x.differential().block(n + 1)));
    auto quot = quotient(y, sub);

    ChainComplex<K> lx(quot.module, compose(quot.projection, compose(dy, quot.section)));

    typename GradedMap<K>::Blocks q_blocks;
    for (auto& [i, m] : quot.projection.blocks()) q_blocks.emplace(i, m);
    ChainMap<K> q(x, lx, GradedMap<K>(x.module(), lx.module(), 0, std::move(q_blocks)));

    typename GradedMap<K>::Blocks lift;
    for (auto& [i, labels] : lx.module().support())
        if (i <= n) lift.emplace(i, Matrix<K>::identity(f, labels.size()));
    GradedMap<K> lower(lx.module(), x.module(), 0, std::move(lift));
    return {std::move(lx), std::move(q), std::move(lower)};
}

struct Verdict {
    bool ok = true;
    std::optional<Witness> witness;

    explicit operator bool() const { return ok; }
};

/// H_i(x) = 0 for every i > n; otherwise the lowest offending class.
template <ExactField K>
Verdict is_local(const ChainComplex<K>& x, int n) {
    auto h = homology(x);
    for (auto& [i, labels] : h.module.support())
        if (i > n) return {false, Witness{i, labels.front(), "local"}};
    return {};
}

/// H_i(f) invertible for every i <= n.
template <ExactField K>
Verdict is_local_equivalence(const ChainMap<K>& f, int n) {
    auto hs = homology(f.source());
    auto hmap = homology_map(f);
    for (auto& [i, m] : hmap) {
        if (i > n) break;
        if (m.rows() == m.cols() && rank(m) == m.rows()) continue;
        std::string basis;
        auto ker = kernel_basis(m);
        if (ker.cols() > 0)
            basis = describe(hs.module, i, ker.col(0));
        else
            basis = "cokernel of dimension " + std::to_string(m.rows() - rank(m));
        return {false, Witness{i, basis, "local-equivalence"}};
    }
    return {};
}

}  // namespace coalg
