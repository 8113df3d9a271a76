#include "dk/dktriple.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>

namespace dk {

namespace {

bool contains(const std::set<int>& s, int x) { return s.count(x) != 0; }

// E and Ev must be wide subcategories containing all isomorphisms.
void check_wide(const FinCategory& B, const std::set<int>& S, const std::string& name) {
    for (int f : S)
        if (f < 0 || f >= static_cast<int>(B.arrows.size()))
            throw NotWideSubcategory(name + " contains unknown arrow " + std::to_string(f));
    for (int e : B.identity)
        if (!contains(S, e)) throw NotWideSubcategory(name + " misses an identity");
    for (int f : B.iso_arrows())
        if (!contains(S, f)) throw NotWideSubcategory(name + " misses isomorphism " + std::to_string(f));
    for (int g : S)
        for (int f : S)
            if (B.composable(g, f) && !contains(S, B.compose(g, f)))
                throw NotWideSubcategory(name + " not closed under composition at (" +
                                         std::to_string(g) + "," + std::to_string(f) + ")");
}

std::set<int> non_invertible(const FinCategory& B, const std::set<int>& S) {
    std::set<int> out;
    for (int f : S)
        if (!B.is_iso(f)) out.insert(f);
    return out;
}

// All perfect matchings (row -> col) inside the given relation.
std::vector<std::vector<int>> perfect_matchings(const std::vector<std::vector<bool>>& rel) {
    const int n = static_cast<int>(rel.size());
    std::vector<std::vector<int>> out;
    std::vector<int> match(n, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> go = [&](int row) {
        if (row == n) {
            out.push_back(match);
            return;
        }
        for (int col = 0; col < n; ++col) {
            if (used[col] || !rel[row][col]) continue;
            match[row] = col;
            used[col] = true;
            go(row + 1);
            used[col] = false;
        }
    };
    if (n > 0 && rel[0].size() != static_cast<size_t>(n)) return out;
    go(0);
    return out;
}

// Kahn's algorithm, smallest index first; empty result = cycle.
std::vector<int> topological_order(const std::vector<std::vector<bool>>& edge) {
    const int n = static_cast<int>(edge.size());
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (edge[i][j]) ++indeg[j];
    std::vector<int> order;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && indeg[i] == 0) { pick = i; break; }
        if (pick < 0) return {};
        done[pick] = true;
        order.push_back(pick);
        for (int j = 0; j < n; ++j)
            if (edge[pick][j]) --indeg[j];
    }
    return order;
}

}  // namespace

DerivedClasses compute_classes(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev) {
    DerivedClasses out;
    std::set<int> ev_neq = non_invertible(B, Ev);
    std::set<int> e_neq = non_invertible(B, E);
    for (int v : ev_neq)
        for (const Arrow& a : B.arrows)
            if (B.composable(v, a.id)) out.sing.insert(B.compose(v, a.id));
    std::set<int> not_mono;
    for (int e : e_neq)
        for (const Arrow& a : B.arrows)
            if (B.composable(a.id, e)) not_mono.insert(B.compose(a.id, e));
    for (const Arrow& a : B.arrows) {
        if (!out.sing.count(a.id)) out.reg.insert(a.id);
        if (!not_mono.count(a.id)) out.mono.insert(a.id);
    }
    for (int m : out.mono)
        if (out.reg.count(m)) out.mreg.insert(m);
    return out;
}

AxiomReport check_T1(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev,
                     const DerivedClasses& classes) {
    for (const Arrow& f : B.arrows) {
        // Enumerate all factorizations f = v . m . e with e in E,
        // m in MReg, v in Ev.
        struct Node { int e, m, v; };
        std::vector<Node> nodes;
        for (int e : E) {
            if (B.src(e) != f.src) continue;
            for (int v : Ev) {
                if (B.tgt(v) != f.tgt) continue;
                for (int m : classes.mreg) {
                    if (B.src(m) != B.tgt(e) || B.tgt(m) != B.src(v)) continue;
                    if (B.compose(v, B.compose(m, e)) == f.id) nodes.push_back({e, m, v});
                }
            }
        }
        if (nodes.empty())
            return {"T1", false, "arrow " + std::to_string(f.id) + " has no E.(MnReg).Ev factorization"};
        // Unique up to unique isomorphism: between any two factorizations
        // there is exactly one pair of isos (h, h') commuting with all
        // three pieces.
        for (const Node& a : nodes)
            for (const Node& b : nodes) {
                int count = 0;
                for (int h : B.hom(B.tgt(a.e), B.tgt(b.e))) {
                    if (!B.is_iso(h) || B.compose(h, a.e) != b.e) continue;
                    for (int hp : B.hom(B.src(a.v), B.src(b.v))) {
                        if (!B.is_iso(hp)) continue;
                        if (B.compose(hp, a.m) == B.compose(b.m, h) && B.compose(b.v, hp) == a.v) ++count;
                    }
                }
                if (count != 1)
                    return {"T1", false,
                            "arrow " + std::to_string(f.id) + ": factorizations (" + std::to_string(a.e) +
                                "," + std::to_string(a.m) + "," + std::to_string(a.v) + ") and (" +
                                std::to_string(b.e) + "," + std::to_string(b.m) + "," + std::to_string(b.v) +
                                ") related by " + std::to_string(count) + " iso pairs (expected 1)"};
            }
    }
    return {"T1", true, ""};
}

PairingData check_T2(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev, int b) {
    PairingData p;
    p.object = b;
    std::vector<int> epis_out, duals_in;
    for (int e : E)
        if (B.src(e) == b) epis_out.push_back(e);
    for (int v : Ev)
        if (B.tgt(v) == b) duals_in.push_back(v);
    p.rows = arrow_classes(B, epis_out, ClassSide::Source);
    p.cols = arrow_classes(B, duals_in, ClassSide::Target);
    const int n = static_cast<int>(p.rows.classes.size());
    if (static_cast<int>(p.cols.classes.size()) != n)
        throw NoAdmissibleOrder("object " + B.objects[b] + ": " + std::to_string(n) + " Epi classes vs " +
                                std::to_string(p.cols.classes.size()) + " dual Epi classes");
    p.iso_entry.assign(n, std::vector<bool>(n, false));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            p.iso_entry[r][c] = B.is_iso(B.compose(p.rows.reps[r], p.cols.reps[c]));

    auto matchings = perfect_matchings(p.iso_entry);
    if (matchings.empty())
        throw NoAdmissibleOrder("object " + B.objects[b] + ": no perfect matching of iso composites");
    p.unique_matching = matchings.size() == 1;
    for (const auto& match : matchings) {
        // Edge i -> j between matched pairs when entry (row i, col of j)
        // is invertible; an admissible order is a topological sort.
        std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
        bool diagonal = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (p.iso_entry[i][match[j]]) {
                    edge[i][j] = true;
                    diagonal = false;
                }
            }
        std::vector<int> order = topological_order(edge);
        if (order.empty() && n > 0) continue;
        if (p.matching.empty()) {
            p.matching = match;
            p.order = order;
        }
        if (diagonal) p.diagonal = true;
    }
    if (p.matching.empty() && n > 0)
        throw NoAdmissibleOrder("object " + B.objects[b] + ": every matching has an iso cycle");
    return p;
}

AxiomReport check_T3(const FinCategory& B, const std::set<int>& E, const std::set<int>& Ev) {
    std::set<int> comp;
    for (int v : Ev)
        for (int e : E)
            if (B.composable(v, e)) comp.insert(B.compose(v, e));
    for (int p : comp)
        for (int q : comp)
            if (B.composable(q, p) && !comp.count(B.compose(q, p)))
                return {"T3", false,
                        "Ev.E not closed: compose(" + std::to_string(q) + "," + std::to_string(p) + ")"};
    return {"T3", true, ""};
}

AxiomReport check_T4(const FinCategory& B, const DerivedClasses& classes) {
    for (int m2 : classes.mreg)
        for (int m1 : classes.mreg)
            if (B.composable(m2, m1) && !classes.mono.count(B.compose(m2, m1)))
                return {"T4", false,
                        "(MnReg).(MnReg) leaves M at (" + std::to_string(m2) + "," + std::to_string(m1) + ")"};
    return {"T4", true, ""};
}

AxiomReport check_T5(const FinCategory& B, const DerivedClasses& classes) {
    for (int m : classes.mono)
        for (int s : classes.sing)
            if (B.composable(m, s) && !classes.sing.count(B.compose(m, s)))
                return {"T5", false,
                        "M.Sing leaves Sing at (" + std::to_string(m) + "," + std::to_string(s) + ")"};
    return {"T5", true, ""};
}

bool ValidationReport::pass() const {
    for (const auto& a : axioms)
        if (!a.pass) return false;
    return true;
}

const AxiomReport* ValidationReport::first_failure() const {
    for (const auto& a : axioms)
        if (!a.pass) return &a;
    return nullptr;
}

ValidationReport validate_triple_report(const TripleData& t) {
    ValidationReport rep;
    t.B.validate();
    check_wide(t.B, t.E, "E");
    check_wide(t.B, t.Ev, "Ev");
    DerivedClasses classes = compute_classes(t.B, t.E, t.Ev);
    rep.axioms.push_back(check_T1(t.B, t.E, t.Ev, classes));
    AxiomReport t2{"T2", true, ""};
    try {
        for (size_t b = 0; b < t.B.objects.size(); ++b)
            rep.pairings.push_back(check_T2(t.B, t.E, t.Ev, static_cast<int>(b)));
    } catch (const NoAdmissibleOrder& e) {
        t2 = {"T2", false, e.what()};
        rep.pairings.clear();
    }
    rep.axioms.push_back(t2);
    rep.axioms.push_back(check_T3(t.B, t.E, t.Ev));
    rep.axioms.push_back(check_T4(t.B, classes));
    rep.axioms.push_back(check_T5(t.B, classes));
    return rep;
}

DKTriple validate_triple(const TripleData& t) {
    ValidationReport rep = validate_triple_report(t);
    if (const AxiomReport* fail = rep.first_failure())
        throw AxiomFailure(fail->axiom, fail->detail);
    DKTriple out;
    out.B = t.B;
    out.E = t.E;
    out.Ev = t.Ev;
    out.classes = compute_classes(t.B, t.E, t.Ev);
    out.pairings = std::move(rep.pairings);
    out.order = object_order(t.B, t.Ev);
    return out;
}

ObjectOrder object_order(const FinCategory& B, const std::set<int>& Ev) {
    ObjectOrder out;
    out.rep = B.object_class_reps();
    const int n = static_cast<int>(B.objects.size());
    out.leq.assign(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) out.leq[out.rep[x]][out.rep[x]] = true;
    for (int v : Ev) out.leq[out.rep[B.src(v)]][out.rep[B.tgt(v)]] = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && out.leq[a][b] && out.leq[b][a])
                throw NotAntisymmetric("objects " + B.objects[a] + " and " + B.objects[b] +
                                       " are comparable both ways");
    std::vector<int> reps;
    for (int x = 0; x < n; ++x)
        if (out.rep[x] == x) reps.push_back(x);
    auto pred_count = [&](int r) {
        int k = 0;
        for (int s : reps)
            if (out.leq[s][r]) ++k;
        return k;
    };
    std::sort(reps.begin(), reps.end(), [&](int a, int b) {
        int pa = pred_count(a), pb = pred_count(b);
        return pa != pb ? pa < pb : a < b;
    });
    out.linear = reps;
    return out;
}

bool is_reduced(const DKTriple& t) {
    std::set<int> comp;
    for (int v : t.Ev)
        for (int e : t.E)
            if (t.B.composable(v, e)) comp.insert(t.B.compose(v, e));
    return comp.size() == t.B.arrows.size();
}

DKTriple reduce(const DKTriple& t) {
    std::set<int> keep;
    for (int v : t.Ev)
        for (int e : t.E)
            if (t.B.composable(v, e)) keep.insert(t.B.compose(v, e));
    TripleData sub;
    sub.B.objects = t.B.objects;
    std::vector<int> new_id(t.B.arrows.size(), -1);
    for (int f : keep) {
        int nid = static_cast<int>(sub.B.arrows.size());
        new_id[f] = nid;
        sub.B.arrows.push_back({nid, t.B.src(f), t.B.tgt(f)});
    }
    sub.B.identity.resize(t.B.objects.size());
    for (size_t x = 0; x < t.B.objects.size(); ++x) sub.B.identity[x] = new_id[t.B.identity[x]];
    const int n_arr = static_cast<int>(sub.B.arrows.size());
    sub.B.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    for (int g : keep)
        for (int f : keep)
            if (t.B.composable(g, f)) sub.B.compose_tab[new_id[g]][new_id[f]] = new_id[t.B.compose(g, f)];
    for (int e : t.E)
        if (new_id[e] >= 0) sub.E.insert(new_id[e]);
    for (int v : t.Ev)
        if (new_id[v] >= 0) sub.Ev.insert(new_id[v]);
    return validate_triple(sub);
}

bool is_diagonalizable(const DKTriple& t) {
    for (const PairingData& p : t.pairings)
        if (!p.diagonal) return false;
    return true;
}

bool is_monotone(const DKTriple& t) {
    for (int m : t.classes.mono)
        if (!t.order.leq[t.order.rep[t.B.src(m)]][t.order.rep[t.B.tgt(m)]]) return false;
    return true;
}

bool is_partially_monotone(const DKTriple& t) {
    for (int m : t.classes.mono) {
        int s = t.order.rep[t.B.src(m)], d = t.order.rep[t.B.tgt(m)];
        if (s != d && t.order.leq[d][s]) return false;  // source strictly bigger
    }
    return true;
}

N0Result build_N0(const DKTriple& t) {
    N0Result out;
    FinCategory& q = out.n0.base;
    q.objects = t.B.objects;
    q.objects.push_back("0");
    const int zero_obj = static_cast<int>(t.B.objects.size());
    out.n0.zero = zero_obj;
    out.object_of.resize(t.B.objects.size());
    for (size_t x = 0; x < t.B.objects.size(); ++x) out.object_of[x] = static_cast<int>(x);

    for (int m : t.classes.mreg) {
        int nid = static_cast<int>(q.arrows.size());
        out.arrow_of_mreg[m] = nid;
        q.arrows.push_back({nid, t.B.src(m), t.B.tgt(m)});
    }
    const int n_obj = zero_obj + 1;
    std::vector<std::vector<int>> zarrow(n_obj, std::vector<int>(n_obj, -1));
    for (int x = 0; x < n_obj; ++x)
        for (int y = 0; y < n_obj; ++y) {
            int nid = static_cast<int>(q.arrows.size());
            zarrow[x][y] = nid;
            q.arrows.push_back({nid, x, y});
        }
    q.identity.resize(n_obj);
    for (size_t x = 0; x < t.B.objects.size(); ++x)
        q.identity[x] = out.arrow_of_mreg.at(t.B.identity[x]);
    q.identity[zero_obj] = zarrow[zero_obj][zero_obj];

    const int n_arr = static_cast<int>(q.arrows.size());
    q.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f)
            if (q.composable(g, f)) q.compose_tab[g][f] = zarrow[q.src(f)][q.tgt(g)];
    // MReg composites: stay in MReg or fall into M n Sing (well defined by
    // (T4) and (T5)); composition runs through B.
    for (auto [m2, g] : out.arrow_of_mreg)
        for (auto [m1, f] : out.arrow_of_mreg) {
            if (!t.B.composable(m2, m1)) continue;
            int comp = t.B.compose(m2, m1);
            auto it = out.arrow_of_mreg.find(comp);
            if (it != out.arrow_of_mreg.end()) q.compose_tab[g][f] = it->second;
        }
    out.n0.validate();
    return out;
}

VResult build_V(const DKTriple& t) {
    VResult out;
    FinCategory& q = out.v.base;
    const int nb = static_cast<int>(t.B.objects.size());
    out.n_object.resize(nb);
    out.b_object.resize(nb);
    for (int x = 0; x < nb; ++x) {
        out.n_object[x] = static_cast<int>(q.objects.size());
        q.objects.push_back("n:" + t.B.objects[x]);
    }
    for (int x = 0; x < nb; ++x) {
        out.b_object[x] = static_cast<int>(q.objects.size());
        q.objects.push_back("b:" + t.B.objects[x]);
    }
    q.objects.push_back("0");
    const int zero_obj = static_cast<int>(q.objects.size()) - 1;
    out.v.zero = zero_obj;

    auto add_arrow = [&](int src, int tgt) {
        int nid = static_cast<int>(q.arrows.size());
        q.arrows.push_back({nid, src, tgt});
        return nid;
    };
    for (int m : t.classes.mreg) out.n_arrow_of_mreg[m] = add_arrow(out.n_object[t.B.src(m)], out.n_object[t.B.tgt(m)]);
    for (const Arrow& a : t.B.arrows) out.b_arrow_of[a.id] = add_arrow(out.b_object[a.src], out.b_object[a.tgt]);
    for (int r : t.classes.reg) out.r_arrow_of_reg[r] = add_arrow(out.b_object[t.B.src(r)], out.n_object[t.B.tgt(r)]);
    const int n_obj = static_cast<int>(q.objects.size());
    std::vector<std::vector<int>> zarrow(n_obj, std::vector<int>(n_obj, -1));
    for (int x = 0; x < n_obj; ++x)
        for (int y = 0; y < n_obj; ++y) zarrow[x][y] = add_arrow(x, y);

    q.identity.resize(n_obj);
    for (int x = 0; x < nb; ++x) {
        q.identity[out.n_object[x]] = out.n_arrow_of_mreg.at(t.B.identity[x]);
        q.identity[out.b_object[x]] = out.b_arrow_of.at(t.B.identity[x]);
    }
    q.identity[zero_obj] = zarrow[zero_obj][zero_obj];

    const int n_arr = static_cast<int>(q.arrows.size());
    q.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f)
            if (q.composable(g, f)) q.compose_tab[g][f] = zarrow[q.src(f)][q.tgt(g)];

    auto n_image = [&](int barrow) -> int {
        auto it = out.n_arrow_of_mreg.find(barrow);
        return it == out.n_arrow_of_mreg.end() ? -1 : it->second;
    };
    auto r_image = [&](int barrow) -> int {
        auto it = out.r_arrow_of_reg.find(barrow);
        return it == out.r_arrow_of_reg.end() ? -1 : it->second;
    };
    for (auto [m2, g] : out.n_arrow_of_mreg)
        for (auto [m1, f] : out.n_arrow_of_mreg)
            if (t.B.composable(m2, m1)) {
                int img = n_image(t.B.compose(m2, m1));
                if (img >= 0) q.compose_tab[g][f] = img;
            }
    for (auto [f2, g] : out.b_arrow_of)
        for (auto [f1, f] : out.b_arrow_of)
            if (t.B.composable(f2, f1)) q.compose_tab[g][f] = out.b_arrow_of.at(t.B.compose(f2, f1));
    for (auto [r, g] : out.r_arrow_of_reg)
        for (auto [f1, f] : out.b_arrow_of)
            if (t.B.composable(r, f1)) {
                int img = r_image(t.B.compose(r, f1));
                if (img >= 0) q.compose_tab[g][f] = img;
            }
    for (auto [m, g] : out.n_arrow_of_mreg)
        for (auto [r, f] : out.r_arrow_of_reg)
            if (t.B.composable(m, r)) {
                int img = r_image(t.B.compose(m, r));
                if (img >= 0) q.compose_tab[g][f] = img;
            }
    out.v.validate();
    return out;
}

std::string triple_to_json(const TripleData& t) {
    nlohmann::json j;
    j["category"] = nlohmann::json::parse(category_to_json(t.B));
    j["epis"] = std::vector<int>(t.E.begin(), t.E.end());
    j["dual_epis"] = std::vector<int>(t.Ev.begin(), t.Ev.end());
    return j.dump(2) + "\n";
}

TripleData triple_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TripleData t;
    t.B = category_from_json(j.at("category").dump());
    for (int e : j.at("epis")) t.E.insert(e);
    for (int v : j.at("dual_epis")) t.Ev.insert(v);
    return t;
}

}  // namespace dk
