#pragma once

// JSON workspaces and report emission.
//
// A workspace names complexes and the structures built on them.  Structure
// maps are stored as blocks keyed by source degree, each a row-major matrix
// in the canonical bases (tensor bases in the order of tensor_modules,
// relative tensors in the canonical complement basis).  Rational scalars are
// strings "p/q", residues mod p are integers.  Emission goes through
// nlohmann::json with sorted keys, so emit(parse(emit(w))) is byte-stable.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "coalg/complex.hpp"
#include "coalg/field.hpp"
#include "coalg/graded.hpp"
#include "coalg/structures.hpp"
#include "coalg/transfer.hpp"

namespace coalg {

using json = nlohmann::json;

/// Malformed JSON.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Well-formed JSON that does not match the workspace schema.
class SchemaError : public Error {
public:
    SchemaError(std::string path, std::string expected)
        : Error("schema error at " + path + ": expected " + expected), path(std::move(path)),
          expected(std::move(expected)) {}
    std::string path;
    std::string expected;
};

/// A declared structure that fails its own axioms.
class ValidationError : public Error {
public:
    ValidationError(std::string name, std::string check, std::optional<Witness> witness)
        : Error(message(name, check, witness)), name(std::move(name)), check(std::move(check)),
          witness(std::move(witness)) {}
    std::string name;
    std::string check;
    std::optional<Witness> witness;

private:
    static std::string message(const std::string& name, const std::string& check, const std::optional<Witness>& w) {
        std::string s = name + " fails " + check;
        if (w) s += " in degree " + std::to_string(w->degree) + " on " + w->basis;
        return s;
    }
};

template <ExactField K>
struct ChainMapEntry {
    std::string source, target;
    ChainMap<K> value;
};

template <ExactField K>
struct ComonoidEntry {
    std::string carrier;
    Comonoid<K> value;
};

template <ExactField K>
struct ComoduleEntry {
    std::string coalgebra, carrier;
    Comodule<K> value;
};

template <ExactField K>
struct MonoidEntry {
    std::string carrier;
    Monoid<K> value;
};

template <ExactField K>
struct ModuleEntry {
    std::string algebra, carrier;
    RightModule<K> value;
};

template <ExactField K>
struct CoringEntry {
    std::string algebra, carrier;
    Coring<K> value;
};

template <ExactField K>
struct CoringComoduleEntry {
    std::string coring, module;
    CoringComodule<K> value;
};

template <ExactField K>
struct Workspace {
    K field;
    std::map<std::string, ChainComplex<K>> complexes;
    std::map<std::string, ChainMapEntry<K>> chain_maps;
    std::map<std::string, ComonoidEntry<K>> comonoids;
    std::map<std::string, ComoduleEntry<K>> comodules;
    std::map<std::string, MonoidEntry<K>> monoids;
    std::map<std::string, ModuleEntry<K>> modules;
    std::map<std::string, CoringEntry<K>> corings;
    std::map<std::string, CoringComoduleEntry<K>> coring_comodules;

    explicit Workspace(K f) : field(std::move(f)) {}

    bool contains(const std::string& name) const {
        return complexes.count(name) || chain_maps.count(name) || comonoids.count(name) || comodules.count(name) ||
               monoids.count(name) || modules.count(name) || corings.count(name) || coring_comodules.count(name);
    }

    /// Section holding `name`, or an empty string.
    std::string section_of(const std::string& name) const {
        if (complexes.count(name)) return "complexes";
        if (chain_maps.count(name)) return "chain_maps";
        if (comonoids.count(name)) return "comonoids";
        if (comodules.count(name)) return "comodules";
        if (monoids.count(name)) return "monoids";
        if (modules.count(name)) return "modules";
        if (corings.count(name)) return "corings";
        if (coring_comodules.count(name)) return "coring_comodules";
        return {};
    }
};

using AnyWorkspace = std::variant<Workspace<Rationals>, Workspace<PrimeField>>;

struct ParseOptions {
    bool validate = true;
};

namespace detail {

inline std::string pointer(const std::string& base, const std::string& key) {
    std::string escaped;
    for (char c : key) {
        if (c == '~') escaped += "~0";
        else if (c == '/') escaped += "~1";
        else escaped += c;
    }
    return base + "/" + escaped;
}

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(pointer(path, key), "a value");
    return *it;
}

inline const json& object_at(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = member(obj, key, path);
    if (!v.is_object()) throw SchemaError(pointer(path, key), "an object");
    return v;
}

inline std::string string_at(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = member(obj, key, path);
    if (!v.is_string()) throw SchemaError(pointer(path, key), "a string");
    return v.get<std::string>();
}

inline int degree_key(const std::string& key, const std::string& path) {
    try {
        std::size_t used = 0;
        int d = std::stoi(key, &used);
        if (used == key.size() && std::to_string(d) == key) return d;
    } catch (const std::exception&) {
    }
    throw SchemaError(pointer(path, key), "an integer degree key");
}

template <ExactField K>
typename K::value_type scalar(const K& f, const json& v, const std::string& path) {
    try {
        if (v.is_number_integer()) {
            if (v.is_number_unsigned()) return f.parse(std::to_string(v.get<std::uint64_t>()));
            return f.parse(std::to_string(v.get<std::int64_t>()));
        }
        if (v.is_string()) return f.parse(v.get<std::string>());
    } catch (const DomainError& e) {
        throw SchemaError(path, std::string("a scalar of ") + f.name() + " (" + e.what() + ")");
    }
    throw SchemaError(path, "an integer or a string scalar");
}

template <ExactField K>
json scalar_json(const K& f, const typename K::value_type& v) {
    if constexpr (std::is_same_v<K, PrimeField>)
        return json(static_cast<std::int64_t>(v));
    else
        return json(f.format(v));
}

template <ExactField K>
Matrix<K> matrix(const K& f, const json& v, std::size_t rows, std::size_t cols, const std::string& path) {
    const std::string shape = std::to_string(rows) + "x" + std::to_string(cols) + " matrix";
    if (!v.is_array() || v.size() != rows) throw SchemaError(path, shape);
    Matrix<K> m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = v[r];
        if (!row.is_array() || row.size() != cols) throw SchemaError(path, shape);
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = scalar(f, row[c], pointer(pointer(path, std::to_string(r)), std::to_string(c)));
    }
    return m;
}

template <ExactField K>
json matrix_json(const Matrix<K>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m.field(), m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Blocks keyed by source degree; absent keys are zero blocks.
template <ExactField K>
GradedMap<K> graded_map(const json& v, const GradedModule<K>& source, const GradedModule<K>& target, int degree,
                        const std::string& path) {
    if (!v.is_object()) throw SchemaError(path, "an object of blocks keyed by degree");
    typename GradedMap<K>::Blocks blocks;
    for (auto it = v.begin(); it != v.end(); ++it) {
        const int d = degree_key(it.key(), path);
        const std::string at = pointer(path, it.key());
        const std::size_t cols = source.dim(d), rows = target.dim(d + degree);
        if (cols == 0) throw SchemaError(at, "a degree where the source is nonzero");
        blocks.emplace(d, matrix(source.field(), it.value(), rows, cols, at));
    }
    return GradedMap<K>(source, target, degree, std::move(blocks));
}

template <ExactField K>
json graded_map_json(const GradedMap<K>& f) {
    json out = json::object();
    for (auto& [d, m] : f.blocks()) out[std::to_string(d)] = matrix_json(m);
    return out;
}

inline const json* section(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) return nullptr;
    if (!it->is_object()) throw SchemaError(pointer("", key), "an object");
    return &*it;
}

inline void require_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw SchemaError(pointer(path, it.key()), "no such key");
    }
}

inline void validated(const std::string& name, const AxiomReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass) throw ValidationError(name, c.name, c.witness);
}

template <ExactField K>
Workspace<K> parse_sections(const json& doc, K field, const ParseOptions& opts) {
    Workspace<K> ws(std::move(field));
    const K& f = ws.field;
    auto claim = [&](const std::string& name, const std::string& path) {
        if (ws.contains(name)) throw SchemaError(path, "a name not used elsewhere in the workspace");
    };
    auto lookup = [](const auto& table, const std::string& name, const std::string& path, const char* what)
        -> const auto& {
        auto it = table.find(name);
        if (it == table.end()) throw SchemaError(path, std::string("the name of a declared ") + what);
        return it->second;
    };
    // structural failures while assembling a declaration (d^2 != 0, maps
    // that are not chain maps) are validation errors of that declaration
    auto guarded = [](const std::string& name, auto&& build) {
        try {
            return build();
        } catch (const NotAComplex& e) {
            throw ValidationError(name, "d^2 = 0", Witness{e.degree, e.witness, "d^2 = 0"});
        } catch (const NotAChainMap& e) {
            throw ValidationError(name, "chain-map", std::nullopt);
        }
    };

    if (auto* sec = section(doc, "complexes")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/complexes", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"degrees", "d"});
            const auto& degs = object_at(*it, "degrees", path);
            Support s;
            for (auto d = degs.begin(); d != degs.end(); ++d) {
                const std::string dp = pointer(pointer(path, "degrees"), d.key());
                if (!d->is_array()) throw SchemaError(dp, "an array of labels");
                std::vector<std::string> labels;
                for (const auto& l : *d) {
                    if (!l.is_string()) throw SchemaError(dp, "an array of labels");
                    labels.push_back(l.get<std::string>());
                }
                s.emplace(degree_key(d.key(), pointer(path, "degrees")), std::move(labels));
            }
            GradedModule<K> m = [&] {
                try {
                    return GradedModule<K>(f, std::move(s));
                } catch (const DimensionError& e) {
                    throw SchemaError(pointer(path, "degrees"), "distinct labels within a degree");
                }
            }();
            auto d = it->contains("d") ? graded_map(it->at("d"), m, m, -1, pointer(path, "d"))
                                       : GradedMap<K>::zero(m, m, -1);
            ws.complexes.emplace(it.key(), guarded(it.key(), [&] { return ChainComplex<K>(m, d); }));
        }
    }

    if (auto* sec = section(doc, "chain_maps")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/chain_maps", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"source", "target", "map"});
            auto src = string_at(*it, "source", path), tgt = string_at(*it, "target", path);
            const auto& x = lookup(ws.complexes, src, pointer(path, "source"), "complex");
            const auto& y = lookup(ws.complexes, tgt, pointer(path, "target"), "complex");
            auto g = graded_map(member(*it, "map", path), x.module(), y.module(), 0, pointer(path, "map"));
            ws.chain_maps.emplace(it.key(), ChainMapEntry<K>{src, tgt, guarded(it.key(), [&] {
                                                                   return ChainMap<K>(x, y, g);
                                                               })});
        }
    }

    if (auto* sec = section(doc, "comonoids")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/comonoids", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"carrier", "delta"});
            auto carrier = string_at(*it, "carrier", path);
            const auto& x = lookup(ws.complexes, carrier, pointer(path, "carrier"), "complex");
            auto delta = graded_map(member(*it, "delta", path), x.module(), tensor_modules(x.module(), x.module()), 0,
                                    pointer(path, "delta"));
            Comonoid<K> c(x, std::move(delta));
            if (opts.validate) validated(it.key(), check_comonoid(c));
            ws.comonoids.emplace(it.key(), ComonoidEntry<K>{carrier, std::move(c)});
        }
    }

    if (auto* sec = section(doc, "comodules")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/comodules", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"coalgebra", "carrier", "coaction"});
            auto coalgebra = string_at(*it, "coalgebra", path);
            auto carrier = string_at(*it, "carrier", path);
            const auto& b = lookup(ws.comonoids, coalgebra, pointer(path, "coalgebra"), "comonoid").value;
            const auto& x = lookup(ws.complexes, carrier, pointer(path, "carrier"), "complex");
            auto rho = graded_map(member(*it, "coaction", path), x.module(),
                                  tensor_modules(x.module(), b.carrier.module()), 0, pointer(path, "coaction"));
            Comodule<K> m(b, x, std::move(rho));
            if (opts.validate) validated(it.key(), check_comodule(m));
            ws.comodules.emplace(it.key(), ComoduleEntry<K>{coalgebra, carrier, std::move(m)});
        }
    }

    if (auto* sec = section(doc, "monoids")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/monoids", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"carrier", "mu"});
            auto carrier = string_at(*it, "carrier", path);
            const auto& x = lookup(ws.complexes, carrier, pointer(path, "carrier"), "complex");
            auto mu = graded_map(member(*it, "mu", path), tensor_modules(x.module(), x.module()), x.module(), 0,
                                 pointer(path, "mu"));
            Monoid<K> a(x, std::move(mu));
            if (opts.validate) validated(it.key(), check_monoid(a));
            ws.monoids.emplace(it.key(), MonoidEntry<K>{carrier, std::move(a)});
        }
    }

    if (auto* sec = section(doc, "modules")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/modules", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"algebra", "carrier", "action"});
            auto algebra = string_at(*it, "algebra", path);
            auto carrier = string_at(*it, "carrier", path);
            const auto& a = lookup(ws.monoids, algebra, pointer(path, "algebra"), "monoid").value;
            const auto& x = lookup(ws.complexes, carrier, pointer(path, "carrier"), "complex");
            auto act = graded_map(member(*it, "action", path), tensor_modules(x.module(), a.carrier.module()),
                                  x.module(), 0, pointer(path, "action"));
            RightModule<K> m(a, x, std::move(act));
            if (opts.validate) validated(it.key(), check_right_module(m, false));
            ws.modules.emplace(it.key(), ModuleEntry<K>{algebra, carrier, std::move(m)});
        }
    }

    if (auto* sec = section(doc, "corings")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/corings", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"algebra", "carrier", "left_action", "right_action", "delta"});
            auto algebra = string_at(*it, "algebra", path);
            auto carrier = string_at(*it, "carrier", path);
            const auto& a = lookup(ws.monoids, algebra, pointer(path, "algebra"), "monoid").value;
            const auto& x = lookup(ws.complexes, carrier, pointer(path, "carrier"), "complex");
            const auto& am = a.carrier.module();
            const auto& bm = x.module();
            auto left = it->contains("left_action")
                            ? graded_map(it->at("left_action"), tensor_modules(am, bm), bm, 0,
                                         pointer(path, "left_action"))
                            : GradedMap<K>::zero(tensor_modules(am, bm), bm, 0);
            auto right = it->contains("right_action")
                             ? graded_map(it->at("right_action"), tensor_modules(bm, am), bm, 0,
                                          pointer(path, "right_action"))
                             : GradedMap<K>::zero(tensor_modules(bm, am), bm, 0);
            auto bb = relative_tensor(RightModule<K>(a, x, right), LeftModule<K>(a, x, left));
            auto delta = graded_map(member(*it, "delta", path), bm, bb.complex.module(), 0, pointer(path, "delta"));
            Coring<K> c(a, x, std::move(left), std::move(right), std::move(delta));
            if (opts.validate) validated(it.key(), check_coring(c));
            ws.corings.emplace(it.key(), CoringEntry<K>{algebra, carrier, std::move(c)});
        }
    }

    if (auto* sec = section(doc, "coring_comodules")) {
        for (auto it = sec->begin(); it != sec->end(); ++it) {
            const std::string path = pointer("/coring_comodules", it.key());
            claim(it.key(), path);
            if (!it->is_object()) throw SchemaError(path, "an object");
            require_keys(*it, path, {"coring", "module", "coaction"});
            auto coring = string_at(*it, "coring", path);
            auto module = string_at(*it, "module", path);
            const auto& b = lookup(ws.corings, coring, pointer(path, "coring"), "coring").value;
            const auto& m = lookup(ws.modules, module, pointer(path, "module"), "module").value;
            if (!(m.algebra == b.algebra))
                throw SchemaError(pointer(path, "module"), "a module over the coring's monoid");
            auto mb = relative_tensor(m, b.as_left());
            auto rho = graded_map(member(*it, "coaction", path), m.carrier.module(), mb.complex.module(), 0,
                                  pointer(path, "coaction"));
            CoringComodule<K> cm(b, m, std::move(rho));
            if (opts.validate) validated(it.key(), check_coring_comodule(cm, false));
            ws.coring_comodules.emplace(it.key(), CoringComoduleEntry<K>{coring, module, std::move(cm)});
        }
    }
    return ws;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace detail

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
}

/// Parses a workspace over whichever field its descriptor names.
inline AnyWorkspace parse_workspace(const std::string& text, const ParseOptions& opts = {}) {
    auto doc = parse_json(text);
    if (!doc.is_object()) throw SchemaError("", "a workspace object");
    detail::require_keys(doc, "", {"field", "complexes", "chain_maps", "comonoids", "comodules", "monoids", "modules",
                                   "corings", "coring_comodules"});
    auto fit = doc.find("field");
    if (fit == doc.end()) return detail::parse_sections(doc, Rationals{}, opts);
    const auto& fd = *fit;
    if (!fd.is_object()) throw SchemaError("/field", "a field descriptor");
    const auto kind = detail::string_at(fd, "kind", "/field");
    if (kind == "Q") {
        detail::require_keys(fd, "/field", {"kind"});
        return detail::parse_sections(doc, Rationals{}, opts);
    }
    if (kind == "Fp") {
        detail::require_keys(fd, "/field", {"kind", "p"});
        const auto& p = detail::member(fd, "p", "/field");
        if (!p.is_number_unsigned() || p.get<std::uint64_t>() >= (1u << 31) ||
            !PrimeField::is_prime(static_cast<std::uint32_t>(p.get<std::uint64_t>())))
            throw SchemaError("/field/p", "a prime below 2^31");
        return detail::parse_sections(doc, PrimeField(static_cast<std::uint32_t>(p.get<std::uint64_t>())), opts);
    }
    throw SchemaError("/field/kind", "\"Q\" or \"Fp\"");
}

/// Parses a workspace and requires the given field type.
template <ExactField K>
Workspace<K> parse_workspace_as(const std::string& text, const ParseOptions& opts = {}) {
    auto any = parse_workspace(text, opts);
    if (auto* w = std::get_if<Workspace<K>>(&any)) return std::move(*w);
    throw SchemaError("/field", "a field of kind " + std::string(std::is_same_v<K, Rationals> ? "Q" : "Fp"));
}

template <ExactField K>
json field_json(const K& f) {
    if constexpr (std::is_same_v<K, PrimeField>)
        return json{{"kind", "Fp"}, {"p", f.modulus()}};
    else
        return json{{"kind", "Q"}};
}

template <ExactField K>
json complex_json(const ChainComplex<K>& x) {
    json degs = json::object();
    for (auto& [d, labels] : x.module().support()) degs[std::to_string(d)] = labels;
    return json{{"degrees", degs}, {"d", detail::graded_map_json(x.differential())}};
}

template <ExactField K>
json workspace_json(const Workspace<K>& ws) {
    json doc = json::object();
    doc["field"] = field_json(ws.field);
    json complexes = json::object();
    for (auto& [name, x] : ws.complexes) complexes[name] = complex_json(x);
    doc["complexes"] = complexes;
    auto put = [&](const char* key, const auto& table, auto&& entry) {
        if (table.empty()) return;
        json sec = json::object();
        for (auto& [name, e] : table) sec[name] = entry(e);
        doc[key] = sec;
    };
    using detail::graded_map_json;
    put("chain_maps", ws.chain_maps, [](const auto& e) {
        return json{{"source", e.source}, {"target", e.target}, {"map", graded_map_json(e.value.map())}};
    });
    put("comonoids", ws.comonoids,
        [](const auto& e) { return json{{"carrier", e.carrier}, {"delta", graded_map_json(e.value.delta)}}; });
    put("comodules", ws.comodules, [](const auto& e) {
        return json{{"coalgebra", e.coalgebra}, {"carrier", e.carrier}, {"coaction", graded_map_json(e.value.coaction)}};
    });
    put("monoids", ws.monoids,
        [](const auto& e) { return json{{"carrier", e.carrier}, {"mu", graded_map_json(e.value.mu)}}; });
    put("modules", ws.modules, [](const auto& e) {
        return json{{"algebra", e.algebra}, {"carrier", e.carrier}, {"action", graded_map_json(e.value.action)}};
    });
    put("corings", ws.corings, [](const auto& e) {
        return json{{"algebra", e.algebra},
                    {"carrier", e.carrier},
                    {"left_action", graded_map_json(e.value.left_action)},
                    {"right_action", graded_map_json(e.value.right_action)},
                    {"delta", graded_map_json(e.value.delta)}};
    });
    put("coring_comodules", ws.coring_comodules, [](const auto& e) {
        return json{{"coring", e.coring}, {"module", e.module}, {"coaction", graded_map_json(e.value.coaction)}};
    });
    return doc;
}

template <ExactField K>
std::string emit_workspace(const Workspace<K>& ws) {
    return workspace_json(ws).dump(2) + "\n";
}

inline std::string emit_workspace(const AnyWorkspace& ws) {
    return std::visit([](const auto& w) { return emit_workspace(w); }, ws);
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { text, json };

inline json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return json{{"degree", w->degree}, {"basis", w->basis}, {"identity", w->identity}};
}

inline json report_json(const PreservationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"witness", witness_json(c.witness)}});
    return json{{"kind", to_string(r.kind)},
                {"n", r.n},
                {"verdicts",
                 {{"square", r.square},
                  {"axioms", r.axioms},
                  {"map", r.map},
                  {"local", r.local},
                  {"local_equivalence", r.local_equivalence}}},
                {"hypotheses", r.hypotheses},
                {"witness", witness_json(r.witness)},
                {"checks", checks}};
}

namespace detail {

inline std::string describe_failure(const Witness& w) {
    return w.identity + " fails in degree " + std::to_string(w.degree) + " on " + w.basis;
}

}  // namespace detail

/// Text form: a header, one line per hypothesis, then exactly five verdict
/// lines starting with PASS or FAIL (square, axioms, map, local,
/// local-equivalence), each failing verdict followed by indented details.
inline std::string report_text(const PreservationReport& r) {
    std::ostringstream os;
    os << to_string(r.kind) << " at n = " << r.n << ": " << (r.green() ? "GREEN" : "RED") << "\n";
    for (auto& [h, holds] : r.hypotheses) os << "hypothesis " << h << ": " << (holds ? "holds" : "violated") << "\n";
    for (const auto& v : verdict_names()) {
        const bool pass = r.verdict(v);
        os << (pass ? "PASS " : "FAIL ") << v;
        const Check* first = nullptr;
        for (const auto& c : r.checks)
            if (!c.pass && detail::verdict_group(c.name) == v && !first) first = &c;
        if (first && first->witness) os << ": " << detail::describe_failure(*first->witness);
        os << "\n";
        if (pass) continue;
        for (const auto& c : r.checks)
            if (!c.pass && detail::verdict_group(c.name) == v && &c != first && c.witness)
                os << "  " << detail::describe_failure(*c.witness) << "\n";
    }
    if (r.witness) os << "witness: " << detail::describe_failure(*r.witness) << "\n";
    return os.str();
}

inline std::string emit_report(const PreservationReport& r, ReportFormat format) {
    if (format == ReportFormat::json) return report_json(r).dump(2) + "\n";
    return report_text(r);
}

namespace detail {

inline std::optional<Witness> witness_from(const json& v, const std::string& path) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_object()) throw SchemaError(path, "null or a witness object");
    const auto& d = member(v, "degree", path);
    if (!d.is_number_integer()) throw SchemaError(pointer(path, "degree"), "an integer");
    return Witness{d.get<int>(), string_at(v, "basis", path), string_at(v, "identity", path)};
}

inline bool bool_at(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = member(obj, key, path);
    if (!v.is_boolean()) throw SchemaError(pointer(path, key), "a boolean");
    return v.get<bool>();
}

}  // namespace detail

inline PreservationReport parse_report(const std::string& text) {
    auto doc = parse_json(text);
    if (!doc.is_object()) throw SchemaError("", "a report object");
    PreservationReport r;
    auto kind = parse_kind(detail::string_at(doc, "kind", ""));
    if (!kind) throw SchemaError("/kind", "comonoid, comodule or coring-comodule");
    r.kind = *kind;
    const auto& n = detail::member(doc, "n", "");
    if (!n.is_number_integer()) throw SchemaError("/n", "an integer");
    r.n = n.get<int>();
    const auto& v = detail::object_at(doc, "verdicts", "");
    r.square = detail::bool_at(v, "square", "/verdicts");
    r.axioms = detail::bool_at(v, "axioms", "/verdicts");
    r.map = detail::bool_at(v, "map", "/verdicts");
    r.local = detail::bool_at(v, "local", "/verdicts");
    r.local_equivalence = detail::bool_at(v, "local_equivalence", "/verdicts");
    if (doc.contains("hypotheses")) {
        const auto& h = detail::object_at(doc, "hypotheses", "");
        for (auto it = h.begin(); it != h.end(); ++it)
            r.hypotheses[it.key()] = detail::bool_at(h, it.key(), "/hypotheses");
    }
    r.witness = detail::witness_from(detail::member(doc, "witness", ""), "/witness");
    if (doc.contains("checks")) {
        const auto& cs = doc["checks"];
        if (!cs.is_array()) throw SchemaError("/checks", "an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string path = "/checks/" + std::to_string(i);
            r.checks.push_back(Check{detail::string_at(cs[i], "name", path), detail::bool_at(cs[i], "pass", path),
                                     detail::witness_from(detail::member(cs[i], "witness", path), path + "/witness")});
        }
    }
    return r;
}

}  // namespace coalg
