#include "dk/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace dk {

namespace {

// All value tuples of length `len` over [0, range), lexicographically.
std::vector<std::vector<int>> all_tuples(int len, int range) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    if (len == 0) {
        out.push_back(cur);
        return out;
    }
    if (range == 0) return out;  // no maps from a nonempty set to the empty set
    while (true) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[i] == range - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

bool is_injective_tuple(const std::vector<int>& t) {
    std::set<int> seen(t.begin(), t.end());
    return seen.size() == t.size();
}

bool is_surjective_tuple(const std::vector<int>& t, int range) {
    std::set<int> seen(t.begin(), t.end());
    return static_cast<int>(seen.size()) == range;
}

bool is_monotone_tuple(const std::vector<int>& t) {
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] < t[i - 1]) return false;
    return true;
}

using TuplePredicate = std::function<bool(int src_elems, int tgt_elems, const std::vector<int>&)>;

ConcreteCategory build_concrete(std::vector<std::string> names, std::vector<int> elems,
                                const TuplePredicate& keep) {
    ConcreteCategory out;
    out.cat.objects = std::move(names);
    out.elems = std::move(elems);
    const int n = static_cast<int>(out.cat.objects.size());
    std::map<std::tuple<int, int, std::vector<int>>, int> index;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (const auto& tup : all_tuples(out.elems[s], out.elems[t])) {
                if (!keep(out.elems[s], out.elems[t], tup)) continue;
                int id = static_cast<int>(out.cat.arrows.size());
                out.cat.arrows.push_back({id, s, t});
                out.fn.push_back(tup);
                index[{s, t, tup}] = id;
            }
    out.cat.identity.resize(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> id_tup(out.elems[x]);
        for (int i = 0; i < out.elems[x]; ++i) id_tup[i] = i;
        out.cat.identity[x] = index.at({x, x, id_tup});
    }
    const int n_arr = static_cast<int>(out.cat.arrows.size());
    out.cat.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f) {
            if (!out.cat.composable(g, f)) continue;
            std::vector<int> comp(out.fn[f].size());
            for (size_t i = 0; i < comp.size(); ++i) comp[i] = out.fn[g][out.fn[f][i]];
            out.cat.compose_tab[g][f] =
                index.at({out.cat.src(f), out.cat.tgt(g), comp});
        }
    out.cat.validate();
    return out;
}

}  // namespace

int ConcreteCategory::arrow_id(int src, int tgt, const std::vector<int>& values) const {
    for (const Arrow& a : cat.arrows)
        if (a.src == src && a.tgt == tgt && fn[a.id] == values) return a.id;
    throw std::out_of_range("no such concrete arrow");
}

ConcreteCategory fin_category(int k, MorphismClass cls) {
    std::vector<std::string> names;
    std::vector<int> elems;
    for (int i = 0; i <= k; ++i) {
        names.push_back(std::to_string(i));
        elems.push_back(i);
    }
    TuplePredicate keep = [cls](int, int tgt, const std::vector<int>& t) {
        switch (cls) {
            case MorphismClass::Fin: return true;
            case MorphismClass::Inj: return is_injective_tuple(t);
            case MorphismClass::Surj: return is_surjective_tuple(t, tgt);
        }
        return false;
    };
    return build_concrete(std::move(names), std::move(elems), keep);
}

ConcreteCategory delta_category(int k) {
    std::vector<std::string> names;
    std::vector<int> elems;
    for (int i = 0; i <= k; ++i) {
        names.push_back("[" + std::to_string(i) + "]");
        elems.push_back(i + 1);
    }
    return build_concrete(std::move(names), std::move(elems),
                          [](int, int, const std::vector<int>& t) { return is_monotone_tuple(t); });
}

namespace {

DKTriple delta_triple(int k, bool min_variant) {
    ConcreteCategory d = delta_category(k);
    TripleData t;
    t.B = d.cat;
    for (const Arrow& a : d.cat.arrows) {
        const std::vector<int>& f = d.fn[a.id];
        if (is_surjective_tuple(f, d.elems[a.tgt])) t.E.insert(a.id);
        if (is_injective_tuple(f)) {
            bool anchored = min_variant ? (f.front() == 0) : (f.back() == d.elems[a.tgt] - 1);
            if (anchored) t.Ev.insert(a.id);
        }
    }
    return validate_triple(t);
}

}  // namespace

DKTriple delta_min(int k) { return delta_triple(k, true); }
DKTriple delta_max(int k) { return delta_triple(k, false); }

std::vector<int> delta_order_reversal(int k) {
    ConcreteCategory d = delta_category(k);
    std::vector<int> image(d.cat.arrows.size());
    for (const Arrow& a : d.cat.arrows) {
        const std::vector<int>& f = d.fn[a.id];
        int m = d.elems[a.src], n = d.elems[a.tgt];
        std::vector<int> rev(m);
        for (int i = 0; i < m; ++i) rev[i] = n - 1 - f[m - 1 - i];
        image[a.id] = d.arrow_id(a.src, a.tgt, rev);
    }
    return image;
}

namespace {

struct Span {
    int left;   // Z -> X, any arrow of A
    int right;  // Z -> Y, in M_A

    bool operator<(const Span& o) const {
        return std::tie(left, right) < std::tie(o.left, o.right);
    }
    bool operator==(const Span& o) const = default;
};

bool spans_isomorphic(const FinCategory& A, const Span& a, const Span& b) {
    int za = A.src(a.left), zb = A.src(b.left);
    for (int z : A.hom(za, zb))
        if (A.is_iso(z) && A.compose(b.left, z) == a.left && A.compose(b.right, z) == a.right)
            return true;
    return false;
}

struct Pullback {
    int apex;
    int to_z;  // apex -> Z
    int to_w;  // apex -> W
};

// Pullback of the cospan (u: Z -> Y, w: W -> Y) by exhaustive search
// with a full universality check.
Pullback compute_pullback(const FinCategory& A, int u, int w) {
    int y = A.tgt(u);
    if (A.tgt(w) != y) throw FactorizationSystemViolation("pullback cospan mismatch");
    for (size_t p_obj = 0; p_obj < A.objects.size(); ++p_obj) {
        for (int p : A.hom(static_cast<int>(p_obj), A.src(u))) {
            for (int q : A.hom(static_cast<int>(p_obj), A.src(w))) {
                if (A.compose(u, p) != A.compose(w, q)) continue;
                bool universal = true;
                for (size_t q_obj = 0; q_obj < A.objects.size() && universal; ++q_obj)
                    for (int a : A.hom(static_cast<int>(q_obj), A.src(u))) {
                        if (!universal) break;
                        for (int b : A.hom(static_cast<int>(q_obj), A.src(w))) {
                            if (A.compose(u, a) != A.compose(w, b)) continue;
                            int mediating = 0;
                            for (int h : A.hom(static_cast<int>(q_obj), static_cast<int>(p_obj)))
                                if (A.compose(p, h) == a && A.compose(q, h) == b) ++mediating;
                            if (mediating != 1) {
                                universal = false;
                                break;
                            }
                        }
                    }
                if (universal) return {static_cast<int>(p_obj), p, q};
            }
        }
    }
    throw FactorizationSystemViolation("pullback of arrow " + std::to_string(u) + " along " +
                                       std::to_string(w) + " does not exist");
}

void check_wide(const FinCategory& B, const std::set<int>& S, const std::string& name) {
    for (int e : B.identity)
        if (!S.count(e)) throw NotWideSubcategory(name + " misses an identity");
    for (int f : B.iso_arrows())
        if (!S.count(f)) throw NotWideSubcategory(name + " misses an isomorphism");
    for (int g : S)
        for (int f : S)
            if (B.composable(g, f) && !S.count(B.compose(g, f)))
                throw NotWideSubcategory(name + " not closed under composition");
}

void validate_factorization_input(const FactorizationInput& in) {
    const FinCategory& A = in.A.cat;
    A.validate();
    try {
        check_wide(A, in.E_A, "E_A");
    } catch (...) {
        throw FactorizationSystemViolation("E_A is not a wide subcategory containing all isos");
    }
    try {
        check_wide(A, in.M_A, "M_A");
    } catch (...) {
        throw FactorizationSystemViolation("M_A is not a wide subcategory containing all isos");
    }
    // M_A arrows must be monomorphisms.
    for (int m : in.M_A)
        for (const Arrow& f : A.arrows)
            for (const Arrow& g : A.arrows) {
                if (f.src != g.src || f.tgt != A.src(m) || g.tgt != A.src(m)) continue;
                if (f.id != g.id && A.compose(m, f.id) == A.compose(m, g.id))
                    throw FactorizationSystemViolation("M_A arrow " + std::to_string(m) +
                                                       " is not a monomorphism");
            }
    // Unique-up-to-unique-iso (E_A, M_A) factorizations.
    for (const Arrow& f : A.arrows) {
        struct Fac { int e, m; };
        std::vector<Fac> facs;
        for (int e : in.E_A) {
            if (A.src(e) != f.src) continue;
            for (int m : in.M_A)
                if (A.tgt(m) == f.tgt && A.src(m) == A.tgt(e) && A.compose(m, e) == f.id)
                    facs.push_back({e, m});
        }
        if (facs.empty())
            throw FactorizationSystemViolation("arrow " + std::to_string(f.id) +
                                               " has no (E_A, M_A) factorization");
        for (const Fac& a : facs)
            for (const Fac& b : facs) {
                int count = 0;
                for (int h : A.hom(A.tgt(a.e), A.tgt(b.e)))
                    if (A.is_iso(h) && A.compose(h, a.e) == b.e && A.compose(b.m, h) == a.m) ++count;
                if (count != 1)
                    throw FactorizationSystemViolation("factorization of arrow " + std::to_string(f.id) +
                                                       " is not unique up to unique isomorphism");
            }
    }
    // Pullbacks of M_A along arbitrary arrows exist and lie in M_A.
    for (int m : in.M_A)
        for (const Arrow& w : A.arrows) {
            if (w.tgt != A.tgt(m)) continue;
            Pullback pb = compute_pullback(A, m, w.id);
            if (!in.M_A.count(pb.to_w))
                throw FactorizationSystemViolation("pullback of M_A arrow " + std::to_string(m) +
                                                   " along " + std::to_string(w.id) + " leaves M_A");
        }
}

}  // namespace

std::vector<int> ParOp::partial_map(int b_arrow) const {
    auto [left, right] = span_of.at(b_arrow);
    const std::vector<int>& a_vals = A.fn[left];
    const std::vector<int>& m_vals = A.fn[right];
    std::vector<int> out(A.elems[A.cat.tgt(right)], -1);
    for (size_t z = 0; z < m_vals.size(); ++z) out[m_vals[z]] = a_vals[z];
    return out;
}

ParOp par_op(const FactorizationInput& input) {
    validate_factorization_input(input);
    const FinCategory& A = input.A.cat;
    const int n_obj = static_cast<int>(A.objects.size());

    // Enumerate spans and group them into iso classes per (X, Y).
    std::vector<std::vector<std::vector<std::vector<Span>>>> classes(
        n_obj, std::vector<std::vector<std::vector<Span>>>(n_obj));
    for (const Arrow& left : A.arrows)
        for (int right : input.M_A) {
            if (A.src(right) != left.src) continue;
            Span s{left.id, right};
            auto& bucket = classes[left.tgt][A.tgt(right)];
            bool placed = false;
            for (auto& cls : bucket)
                if (spans_isomorphic(A, cls.front(), s)) {
                    cls.push_back(s);
                    placed = true;
                    break;
                }
            if (!placed) bucket.push_back({s});
        }
    for (auto& row : classes)
        for (auto& bucket : row)
            for (auto& cls : bucket) std::sort(cls.begin(), cls.end());

    ParOp out;
    out.A = input.A;
    FinCategory B;
    std::map<std::tuple<int, int, Span>, int> index;  // (X, Y, canonical span) -> arrow id
    for (int x = 0; x < n_obj; ++x)
        for (int y = 0; y < n_obj; ++y) {
            auto& bucket = classes[x][y];
            std::sort(bucket.begin(), bucket.end(),
                      [](const auto& a, const auto& b) { return a.front() < b.front(); });
            for (const auto& cls : bucket) {
                int id = static_cast<int>(B.arrows.size());
                B.arrows.push_back({id, x, y});
                out.span_of.push_back({cls.front().left, cls.front().right});
                index[{x, y, cls.front()}] = id;
            }
        }
    B.objects = A.objects;

    auto classify = [&](int x, int y, const Span& s) {
        for (const auto& cls : classes[x][y])
            if (spans_isomorphic(A, cls.front(), s)) return index.at({x, y, cls.front()});
        throw FactorizationSystemViolation("span escaped its own class enumeration");
    };

    B.identity.resize(n_obj);
    for (int x = 0; x < n_obj; ++x)
        B.identity[x] = classify(x, x, {A.identity[x], A.identity[x]});

    std::map<std::pair<int, int>, Pullback> pb_cache;
    auto pullback = [&](int u, int w) {
        auto key = std::make_pair(u, w);
        auto it = pb_cache.find(key);
        if (it == pb_cache.end()) it = pb_cache.emplace(key, compute_pullback(A, u, w)).first;
        return it->second;
    };

    const int n_arr = static_cast<int>(B.arrows.size());
    B.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f) {
            if (!B.composable(g, f)) continue;
            auto [f_left, f_right] = out.span_of[f];
            auto [g_left, g_right] = out.span_of[g];
            Pullback pb = pullback(f_right, g_left);
            Span comp{A.compose(f_left, pb.to_z), A.compose(g_right, pb.to_w)};
            B.compose_tab[g][f] = classify(B.src(f), B.tgt(g), comp);
        }
    B.validate();

    TripleData t;
    t.B = std::move(B);
    for (int id = 0; id < n_arr; ++id) {
        auto [left, right] = out.span_of[id];
        if (input.M_A.count(left) && A.is_iso(right)) t.E.insert(id);
        if (A.is_iso(left) && input.M_A.count(right)) t.Ev.insert(id);
    }
    out.triple = validate_triple(t);
    return out;
}

ParOp gamma(int k) {
    FactorizationInput in;
    in.A = fin_category(k, MorphismClass::Fin);
    for (const Arrow& a : in.A.cat.arrows) {
        if (is_surjective_tuple(in.A.fn[a.id], in.A.elems[a.tgt])) in.E_A.insert(a.id);
        if (is_injective_tuple(in.A.fn[a.id])) in.M_A.insert(a.id);
    }
    return par_op(in);
}

ParOp fi_sharp(int k) {
    FactorizationInput in;
    in.A = fin_category(k, MorphismClass::Inj);
    for (const Arrow& a : in.A.cat.arrows) {
        if (in.A.cat.is_iso(a.id)) in.E_A.insert(a.id);
        in.M_A.insert(a.id);  // every injection
    }
    return par_op(in);
}

MatDiagram linearize_par_op(const ParOp& p, Ring ring) {
    const FinCategory& B = p.triple.B;
    std::vector<int> dims;
    for (size_t x = 0; x < B.objects.size(); ++x) dims.push_back(p.A.elems[x]);
    std::vector<Matrix> mats;
    for (const Arrow& a : B.arrows) {
        auto [left, right] = p.span_of[a.id];
        Matrix m(ring, dims[a.tgt], dims[a.src]);
        for (size_t z = 0; z < p.A.fn[left].size(); ++z)
            m.at(p.A.fn[right][z], p.A.fn[left][z]) = 1;
        mats.push_back(std::move(m));
    }
    return validate_diagram(B, ring, std::move(dims), std::move(mats));
}

TripleData preset_triple(const std::string& name) {
    auto pos = name.find(':');
    if (pos == std::string::npos) throw std::invalid_argument("preset must be name:k, got " + name);
    std::string kind = name.substr(0, pos);
    int k = std::stoi(name.substr(pos + 1));
    DKTriple t;
    if (kind == "delta-min") t = delta_min(k);
    else if (kind == "delta-max") t = delta_max(k);
    else if (kind == "gamma") t = gamma(k).triple;
    else if (kind == "fi-sharp") t = fi_sharp(k).triple;
    else throw std::invalid_argument("unknown preset: " + name);
    return TripleData{t.B, t.E, t.Ev};
}

}  // namespace dk
