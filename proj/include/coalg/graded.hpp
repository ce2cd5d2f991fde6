#pragma once

// Finitely supported free graded modules with labelled bases, homogeneous
// maps stored as per-degree matrices, tensor products with Koszul signs and
// quotients by graded subspaces.
//
// Sign convention: (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y).
// Tensor basis order in degree k: ascending degree i of the left factor, then
// the left index in degree i, then the right index in degree k - i.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coalg/error.hpp"
#include "coalg/field.hpp"
#include "coalg/matrix.hpp"

namespace coalg {

/// Where an identity between two maps first fails: a source degree and the
/// basis vector whose images differ.
struct Witness {
    int degree = 0;
    std::string basis;
    std::string identity;

    friend bool operator==(const Witness&, const Witness&) = default;
};

using Support = std::map<int, std::vector<std::string>>;

template <ExactField K>
class GradedModule {
public:
    explicit GradedModule(K field, Support support = {}) {
        Support clean;
        for (auto& [deg, labels] : support) {
            if (labels.empty()) continue;
            std::set<std::string> seen;
            for (const auto& l : labels)
                if (!seen.insert(l).second)
                    throw DimensionError("duplicate basis label '" + l + "' in degree " + std::to_string(deg));
            clean.emplace(deg, std::move(labels));
        }
        data_ = std::make_shared<const Data>(Data{std::move(field), std::move(clean)});
    }

    const K& field() const { return data_->field; }
    const Support& support() const { return data_->support; }

    std::size_t dim(int degree) const {
        auto it = data_->support.find(degree);
        return it == data_->support.end() ? 0 : it->second.size();
    }
    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto& [d, l] : data_->support) n += l.size();
        return n;
    }
    bool is_zero() const { return data_->support.empty(); }

    const std::vector<std::string>& labels(int degree) const {
        static const std::vector<std::string> none;
        auto it = data_->support.find(degree);
        return it == data_->support.end() ? none : it->second;
    }

    std::vector<int> degrees() const {
        std::vector<int> out;
        for (auto& [d, l] : data_->support) out.push_back(d);
        return out;
    }

    std::optional<int> min_degree() const {
        if (is_zero()) return std::nullopt;
        return data_->support.begin()->first;
    }
    std::optional<int> max_degree() const {
        if (is_zero()) return std::nullopt;
        return data_->support.rbegin()->first;
    }

    friend bool operator==(const GradedModule& a, const GradedModule& b) {
        return a.data_ == b.data_ || (a.field() == b.field() && a.support() == b.support());
    }

private:
    struct Data {
        K field;
        Support support;
    };
    std::shared_ptr<const Data> data_;
};

/// "2*x - y" style rendering of a vector in the basis of one degree.
template <ExactField K>
std::string describe(const GradedModule<K>& m, int degree, const typename Matrix<K>::Vector& v) {
    const K& f = m.field();
    const auto& labels = m.labels(degree);
    std::string out;
    for (std::size_t i = 0; i < v.size() && i < labels.size(); ++i) {
        if (f.is_zero(v[i])) continue;
        std::string coeff = f.format(v[i]);
        bool negative = !coeff.empty() && coeff[0] == '-';
        if (negative) coeff.erase(0, 1);
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (coeff != "1") out += coeff + "*";
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

template <ExactField K>
class GradedMap {
public:
    using Blocks = std::map<int, Matrix<K>>;

    /// Blocks are keyed by source degree i and must have shape
    /// dim target_{i+degree} x dim source_i.  Missing blocks are zero.
    GradedMap(GradedModule<K> source, GradedModule<K> target, int degree, Blocks blocks = {})
        : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
        if (!(source_.field() == target_.field())) throw FieldMismatch();
        for (auto& [i, m] : blocks) {
            if (!(m.field() == source_.field())) throw FieldMismatch();
            if (m.rows() != target_.dim(i + degree_) || m.cols() != source_.dim(i))
                throw DimensionError("block at source degree " + std::to_string(i) + " has shape " + m.shape() +
                                     ", expected " + std::to_string(target_.dim(i + degree_)) + "x" +
                                     std::to_string(source_.dim(i)));
            if (!m.is_zero()) blocks_.emplace(i, std::move(m));
        }
    }

    static GradedMap zero(GradedModule<K> source, GradedModule<K> target, int degree) {
        return GradedMap(std::move(source), std::move(target), degree);
    }

    static GradedMap identity(const GradedModule<K>& m) {
        Blocks b;
        for (auto& [d, labels] : m.support()) b.emplace(d, Matrix<K>::identity(m.field(), labels.size()));
        return GradedMap(m, m, 0, std::move(b));
    }

    const GradedModule<K>& source() const { return source_; }
    const GradedModule<K>& target() const { return target_; }
    int degree() const { return degree_; }
    const K& field() const { return source_.field(); }
    const Blocks& blocks() const { return blocks_; }

    Matrix<K> block(int source_degree) const {
        auto it = blocks_.find(source_degree);
        if (it != blocks_.end()) return it->second;
        return Matrix<K>(field(), target_.dim(source_degree + degree_), source_.dim(source_degree));
    }

    bool is_zero() const { return blocks_.empty(); }

    GradedMap operator+(const GradedMap& o) const { return combine(o, false); }
    GradedMap operator-(const GradedMap& o) const { return combine(o, true); }
    GradedMap operator-() const {
        Blocks b;
        for (auto& [i, m] : blocks_) b.emplace(i, -m);
        return GradedMap(source_, target_, degree_, std::move(b));
    }
    GradedMap scaled(const typename K::value_type& s) const {
        Blocks b;
        for (auto& [i, m] : blocks_) b.emplace(i, m.scaled(s));
        return GradedMap(source_, target_, degree_, std::move(b));
    }

    /// Image of one basis vector.
    typename Matrix<K>::Vector apply_basis(int degree, std::size_t index) const { return block(degree).col(index); }

    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        return a.degree_ == b.degree_ && a.source_ == b.source_ && a.target_ == b.target_ && a.blocks_ == b.blocks_;
    }

private:
    GradedMap combine(const GradedMap& o, bool subtract) const {
        if (!(source_ == o.source_) || !(target_ == o.target_) || degree_ != o.degree_)
            throw ModuleMismatch("adding maps with different source, target or degree");
        Blocks b = blocks_;
        for (auto& [i, m] : o.blocks_) {
            auto it = b.find(i);
            if (it == b.end())
                b.emplace(i, subtract ? -m : m);
            else
                it->second = subtract ? it->second - m : it->second + m;
        }
        return GradedMap(source_, target_, degree_, std::move(b));
    }

    GradedModule<K> source_;
    GradedModule<K> target_;
    int degree_;
    Blocks blocks_;
};

/// First source basis vector on which f and g disagree, scanning degrees in
/// ascending order.  f and g must have the same source, target and degree.
template <ExactField K>
std::optional<Witness> first_difference(const GradedMap<K>& f, const GradedMap<K>& g, std::string identity = {}) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()) || f.degree() != g.degree())
        throw ModuleMismatch("comparing maps with different source, target or degree");
    const K& k = f.field();
    for (auto& [deg, labels] : f.source().support()) {
        auto a = f.block(deg), b = g.block(deg);
        for (std::size_t c = 0; c < a.cols(); ++c)
            for (std::size_t r = 0; r < a.rows(); ++r)
                if (!k.equal(a(r, c), b(r, c))) return Witness{deg, labels[c], identity};
    }
    return std::nullopt;
}

/// g after f.
template <ExactField K>
GradedMap<K> compose(const GradedMap<K>& g, const GradedMap<K>& f) {
    if (!(f.target() == g.source())) throw ModuleMismatch("compose: target of f is not the source of g");
    typename GradedMap<K>::Blocks b;
    for (auto& [i, m] : f.blocks()) {
        auto gi = g.blocks().find(i + f.degree());
        if (gi == g.blocks().end()) continue;
        b.emplace(i, gi->second * m);
    }
    return GradedMap<K>(f.source(), g.target(), f.degree() + g.degree(), std::move(b));
}

namespace detail {

inline std::string tensor_label(const std::string& a, const std::string& b) {
    static const std::string sym = "⊗";
    auto wrap = [](const std::string& s) { return s.find(sym) == std::string::npos ? s : "(" + s + ")"; };
    return wrap(a) + sym + wrap(b);
}

/// Offsets of the (i, k - i) blocks inside degree k of m (x) n.
template <ExactField K>
std::map<int, std::map<int, std::size_t>> tensor_offsets(const GradedModule<K>& m, const GradedModule<K>& n) {
    std::map<int, std::map<int, std::size_t>> off;
    std::map<int, std::size_t> running;
    for (auto& [i, la] : m.support())
        for (auto& [j, lb] : n.support()) {
            auto& r = running[i + j];
            off[i + j][i] = r;
            r += la.size() * lb.size();
        }
    return off;
}

inline int koszul(int a, int b) { return ((a % 2 != 0) && (b % 2 != 0)) ? -1 : 1; }

}  // namespace detail

template <ExactField K>
GradedModule<K> tensor_modules(const GradedModule<K>& m, const GradedModule<K>& n) {
    if (!(m.field() == n.field())) throw FieldMismatch();
    Support s;
    for (auto& [i, la] : m.support())
        for (auto& [j, lb] : n.support()) s[i + j];
    for (auto& [k, out] : s)
        for (auto& [i, la] : m.support()) {
            const auto& lb = n.labels(k - i);
            for (const auto& a : la)
                for (const auto& b : lb) out.push_back(detail::tensor_label(a, b));
        }
    return GradedModule<K>(m.field(), std::move(s));
}

template <ExactField K>
GradedMap<K> tensor_maps(const GradedMap<K>& f, const GradedMap<K>& g) {
    if (!(f.field() == g.field())) throw FieldMismatch();
    const K& k = f.field();
    auto src = tensor_modules(f.source(), g.source());
    auto tgt = tensor_modules(f.target(), g.target());
    auto src_off = detail::tensor_offsets(f.source(), g.source());
    auto tgt_off = detail::tensor_offsets(f.target(), g.target());
    const int fd = f.degree(), gd = g.degree();
    typename GradedMap<K>::Blocks blocks;
    for (auto& [sk, parts] : src_off) {
        const int tk = sk + fd + gd;
        if (tgt.dim(tk) == 0) continue;
        Matrix<K> blk(k, tgt.dim(tk), src.dim(sk));
        bool any = false;
        for (auto& [i, soff] : parts) {
            auto fi = f.blocks().find(i);
            auto gi = g.blocks().find(sk - i);
            if (fi == f.blocks().end() || gi == g.blocks().end()) continue;
            const auto& a = fi->second;
            const auto& b = gi->second;
            const std::size_t toff = tgt_off.at(tk).at(i + fd);
            const bool negate = detail::koszul(gd, i) < 0;
            for (std::size_t ra = 0; ra < a.rows(); ++ra)
                for (std::size_t ca = 0; ca < a.cols(); ++ca) {
                    if (k.is_zero(a(ra, ca))) continue;
                    auto av = negate ? k.neg(a(ra, ca)) : a(ra, ca);
                    for (std::size_t rb = 0; rb < b.rows(); ++rb)
                        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                            if (k.is_zero(b(rb, cb))) continue;
                            blk(toff + ra * b.rows() + rb, soff + ca * b.cols() + cb) = k.mul(av, b(rb, cb));
                            any = true;
                        }
                }
        }
        if (any) blocks.emplace(sk, std::move(blk));
    }
    return GradedMap<K>(std::move(src), std::move(tgt), fd + gd, std::move(blocks));
}

namespace detail {

using BasisKey = std::tuple<int, std::size_t, int, std::size_t, int, std::size_t>;

/// Positions of x (x) y (x) z basis vectors in (X (x) Y) (x) Z, or in
/// X (x) (Y (x) Z) when `left_nested` is false, keyed by degrees and indices.
template <ExactField K>
std::map<int, std::map<BasisKey, std::size_t>> triple_positions(const GradedModule<K>& x, const GradedModule<K>& y,
                                                                 const GradedModule<K>& z, bool left_nested) {
    std::map<int, std::map<BasisKey, std::size_t>> pos;
    std::map<int, std::size_t> next;
    if (left_nested) {
        auto xy = tensor_modules(x, y);
        const auto whole = tensor_modules(xy, z);
        for (auto& [k, unused] : whole.support()) {
            (void)unused;
            for (auto& [p, lxy] : xy.support()) {
                const std::size_t zdim = z.dim(k - p);
                if (zdim == 0) continue;
                for (auto& [i, lx] : x.support()) {
                    const std::size_t ydim = y.dim(p - i);
                    for (std::size_t a = 0; a < lx.size(); ++a)
                        for (std::size_t b = 0; b < ydim; ++b)
                            for (std::size_t c = 0; c < zdim; ++c)
                                pos[k][BasisKey{i, a, p - i, b, k - p, c}] = next[k]++;
                }
            }
        }
    } else {
        auto yz = tensor_modules(y, z);
        const auto whole = tensor_modules(x, yz);
        for (auto& [k, unused] : whole.support()) {
            (void)unused;
            for (auto& [i, lx] : x.support()) {
                if (yz.dim(k - i) == 0) continue;
                for (std::size_t a = 0; a < lx.size(); ++a)
                    for (auto& [j, ly] : y.support()) {
                        const std::size_t zdim = z.dim(k - i - j);
                        for (std::size_t b = 0; b < ly.size(); ++b)
                            for (std::size_t c = 0; c < zdim; ++c)
                                pos[k][BasisKey{i, a, j, b, k - i - j, c}] = next[k]++;
                    }
            }
        }
    }
    return pos;
}

}  // namespace detail

/// The associator (X (x) Y) (x) Z -> X (x) (Y (x) Z), a signless permutation.
template <ExactField K>
GradedMap<K> reassociate(const GradedModule<K>& x, const GradedModule<K>& y, const GradedModule<K>& z) {
    const K& f = x.field();
    auto src = tensor_modules(tensor_modules(x, y), z);
    auto tgt = tensor_modules(x, tensor_modules(y, z));
    auto from = detail::triple_positions(x, y, z, true);
    auto to = detail::triple_positions(x, y, z, false);
    typename GradedMap<K>::Blocks blocks;
    for (auto& [k, keys] : from) {
        Matrix<K> m(f, tgt.dim(k), src.dim(k));
        const auto& target_keys = to.at(k);
        for (auto& [key, col] : keys) m(target_keys.at(key), col) = f.one();
        blocks.emplace(k, std::move(m));
    }
    return GradedMap<K>(std::move(src), std::move(tgt), 0, std::move(blocks));
}

/// Inverse associator X (x) (Y (x) Z) -> (X (x) Y) (x) Z.
template <ExactField K>
GradedMap<K> reassociate_inverse(const GradedModule<K>& x, const GradedModule<K>& y, const GradedModule<K>& z) {
    auto fwd = reassociate(x, y, z);
    typename GradedMap<K>::Blocks blocks;
    for (auto& [k, m] : fwd.blocks()) blocks.emplace(k, m.transpose());
    return GradedMap<K>(fwd.target(), fwd.source(), 0, std::move(blocks));
}

/// The symmetry X (x) Y -> Y (x) X, x (x) y |-> (-1)^{|x||y|} y (x) x.
template <ExactField K>
GradedMap<K> symmetry(const GradedModule<K>& x, const GradedModule<K>& y) {
    const K& f = x.field();
    auto src = tensor_modules(x, y);
    auto tgt = tensor_modules(y, x);
    auto src_off = detail::tensor_offsets(x, y);
    auto tgt_off = detail::tensor_offsets(y, x);
    typename GradedMap<K>::Blocks blocks;
    for (auto& [k, parts] : src_off) {
        Matrix<K> m(f, tgt.dim(k), src.dim(k));
        for (auto& [i, soff] : parts) {
            const int j = k - i;
            const std::size_t xd = x.dim(i), yd = y.dim(j);
            const std::size_t toff = tgt_off.at(k).at(j);
            auto s = detail::koszul(i, j) < 0 ? f.neg(f.one()) : f.one();
            for (std::size_t a = 0; a < xd; ++a)
                for (std::size_t b = 0; b < yd; ++b) m(toff + b * xd + a, soff + a * yd + b) = s;
        }
        blocks.emplace(k, std::move(m));
    }
    return GradedMap<K>(std::move(src), std::move(tgt), 0, std::move(blocks));
}

/// Direct sum with the left summand's basis first in every degree.  Labels
/// must not collide.
template <ExactField K>
GradedModule<K> direct_sum(const GradedModule<K>& a, const GradedModule<K>& b) {
    if (!(a.field() == b.field())) throw FieldMismatch();
    Support s = a.support();
    for (auto& [d, l] : b.support()) {
        auto& out = s[d];
        out.insert(out.end(), l.begin(), l.end());
    }
    return GradedModule<K>(a.field(), std::move(s));
}

/// f (+) g between direct sums, block diagonal.
template <ExactField K>
GradedMap<K> direct_sum(const GradedMap<K>& f, const GradedMap<K>& g) {
    if (f.degree() != g.degree()) throw ModuleMismatch("direct sum of maps of different degrees");
    const K& k = f.field();
    auto src = direct_sum(f.source(), g.source());
    auto tgt = direct_sum(f.target(), g.target());
    typename GradedMap<K>::Blocks blocks;
    for (auto& [d, unused] : src.support()) {
        (void)unused;
        const int t = d + f.degree();
        if (tgt.dim(t) == 0) continue;
        Matrix<K> m(k, tgt.dim(t), src.dim(d));
        auto fb = f.block(d), gb = g.block(d);
        for (std::size_t r = 0; r < fb.rows(); ++r)
            for (std::size_t c = 0; c < fb.cols(); ++c) m(r, c) = fb(r, c);
        for (std::size_t r = 0; r < gb.rows(); ++r)
            for (std::size_t c = 0; c < gb.cols(); ++c) m(fb.rows() + r, fb.cols() + c) = gb(r, c);
        blocks.emplace(d, std::move(m));
    }
    return GradedMap<K>(std::move(src), std::move(tgt), f.degree(), std::move(blocks));
}

template <ExactField K>
struct Quotient {
    GradedModule<K> module;
    GradedMap<K> projection;  ///< ambient -> quotient, degree 0, surjective
    GradedMap<K> section;     ///< quotient -> ambient, inclusion of the canonical complement
};

inline std::string bar_label(const std::string& s) { return s + "̄"; }
inline std::string class_label(const std::string& s) { return "[" + s + "]"; }

/// Quotient of m by per-degree subspaces (columns of `sub[i]` span the
/// subspace in degree i).  In degrees listed in `sub` the quotient basis is
/// the canonical complement of the subspace, the standard basis vectors
/// picked out by the pivots of rref([sub | I]), with decorated labels.
/// Degrees absent from `sub` are carried over unchanged.
template <ExactField K>
Quotient<K> quotient(const GradedModule<K>& m, const std::map<int, Matrix<K>>& sub,
                     const std::function<std::string(const std::string&)>& decorate = bar_label) {
    const K& f = m.field();
    for (auto& [d, s] : sub)
        if (s.rows() != m.dim(d))
            throw DimensionError("quotient: subspace in degree " + std::to_string(d) + " has " +
                                 std::to_string(s.rows()) + " rows, module has dimension " + std::to_string(m.dim(d)));
    Support qs;
    std::map<int, Matrix<K>> proj, sect;
    for (auto& [d, labels] : m.support()) {
        auto it = sub.find(d);
        if (it == sub.end()) {
            qs.emplace(d, labels);
            proj.emplace(d, Matrix<K>::identity(f, labels.size()));
            sect.emplace(d, Matrix<K>::identity(f, labels.size()));
            continue;
        }
        auto data = quotient_data(it->second);
        std::vector<std::string> ql;
        for (auto c : data.complement) ql.push_back(decorate(labels[c]));
        Matrix<K> inc(f, labels.size(), data.complement.size());
        for (std::size_t j = 0; j < data.complement.size(); ++j) inc(data.complement[j], j) = f.one();
        qs.emplace(d, std::move(ql));
        proj.emplace(d, std::move(data.projection));
        sect.emplace(d, std::move(inc));
    }
    GradedModule<K> q(f, std::move(qs));
    return {q, GradedMap<K>(m, q, 0, std::move(proj)), GradedMap<K>(q, m, 0, std::move(sect))};
}

}  // namespace coalg
