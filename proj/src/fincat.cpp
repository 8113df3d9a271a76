#include "dk/fincat.hpp"

#include <algorithm>
#include <json.hpp>

namespace dk {

int FinCategory::object_index(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    throw std::out_of_range("no such object: " + name);
}

int FinCategory::compose(int g, int f) const {
    if (!composable(g, f))
        throw MissingComposite("compose(" + std::to_string(g) + "," + std::to_string(f) +
                               "): target/source mismatch");
    int gf = compose_tab[g][f];
    if (gf < 0)
        throw MissingComposite("compose(" + std::to_string(g) + "," + std::to_string(f) +
                               ") missing from table");
    return gf;
}

std::vector<int> FinCategory::hom(int x, int y) const {
    std::vector<int> out;
    for (const Arrow& a : arrows)
        if (a.src == x && a.tgt == y) out.push_back(a.id);
    return out;
}

void FinCategory::validate() const {
    const int n_obj = static_cast<int>(objects.size());
    const int n_arr = static_cast<int>(arrows.size());
    for (int i = 0; i < n_arr; ++i) {
        const Arrow& a = arrows[i];
        if (a.id != i) throw MissingComposite("arrow ids must be dense, got " + std::to_string(a.id));
        if (a.src < 0 || a.src >= n_obj || a.tgt < 0 || a.tgt >= n_obj)
            throw MissingComposite("arrow " + std::to_string(i) + " has out-of-range endpoint");
    }
    if (static_cast<int>(identity.size()) != n_obj) throw BadIdentity("identity map not total");
    for (int x = 0; x < n_obj; ++x) {
        int e = identity[x];
        if (e < 0 || e >= n_arr || arrows[e].src != x || arrows[e].tgt != x)
            throw BadIdentity("identity of object " + objects[x] + " is not an endo-arrow");
    }
    if (static_cast<int>(compose_tab.size()) != n_arr) throw MissingComposite("compose table wrong size");
    for (int g = 0; g < n_arr; ++g) {
        if (static_cast<int>(compose_tab[g].size()) != n_arr)
            throw MissingComposite("compose table row wrong size");
        for (int f = 0; f < n_arr; ++f) {
            int gf = compose_tab[g][f];
            if (!composable(g, f)) {
                if (gf >= 0)
                    throw MissingComposite("compose(" + std::to_string(g) + "," + std::to_string(f) +
                                           ") defined on non-composable pair");
                continue;
            }
            if (gf < 0 || gf >= n_arr)
                throw MissingComposite("compose(" + std::to_string(g) + "," + std::to_string(f) +
                                       ") missing");
            if (arrows[gf].src != src(f) || arrows[gf].tgt != tgt(g))
                throw MissingComposite("compose(" + std::to_string(g) + "," + std::to_string(f) +
                                       ") has wrong endpoints");
        }
    }
    for (int f = 0; f < n_arr; ++f) {
        if (compose(f, identity[src(f)]) != f || compose(identity[tgt(f)], f) != f)
            throw BadIdentity("identity is not a unit on arrow " + std::to_string(f));
    }
    // Full associativity scan over composable triples.
    for (int h = 0; h < n_arr; ++h)
        for (int g = 0; g < n_arr; ++g) {
            if (!composable(h, g)) continue;
            int hg = compose(h, g);
            for (int f = 0; f < n_arr; ++f) {
                if (!composable(g, f)) continue;
                if (compose(h, compose(g, f)) != compose(hg, f))
                    throw AssociativityViolation("associativity fails on (" + std::to_string(h) + "," +
                                                 std::to_string(g) + "," + std::to_string(f) + ")");
            }
        }
}

std::optional<int> FinCategory::inverse_of(int f) const {
    for (int g : hom(tgt(f), src(f)))
        if (compose(g, f) == identity[src(f)] && compose(f, g) == identity[tgt(f)]) return g;
    return std::nullopt;
}

bool FinCategory::is_iso(int f) const { return inverse_of(f).has_value(); }

std::vector<int> FinCategory::iso_arrows() const {
    std::vector<int> out;
    for (const Arrow& a : arrows)
        if (is_iso(a.id)) out.push_back(a.id);
    return out;
}

std::vector<int> FinCategory::object_class_reps() const {
    std::vector<int> rep(objects.size());
    for (size_t x = 0; x < objects.size(); ++x) {
        rep[x] = static_cast<int>(x);
        for (size_t y = 0; y < x; ++y)
            if (iso_witness(static_cast<int>(x), static_cast<int>(y)) >= 0) {
                rep[x] = rep[y];
                break;
            }
    }
    return rep;
}

int FinCategory::iso_witness(int from, int to) const {
    for (int f : hom(from, to))
        if (is_iso(f)) return f;
    return -1;
}

FinCategory validate_category(FinCategory raw) {
    raw.validate();
    return raw;
}

FinCategory opposite(const FinCategory& c) {
    FinCategory op;
    op.objects = c.objects;
    op.arrows = c.arrows;
    for (Arrow& a : op.arrows) std::swap(a.src, a.tgt);
    op.identity = c.identity;
    op.compose_tab.assign(c.arrows.size(), std::vector<int>(c.arrows.size(), -1));
    for (size_t g = 0; g < c.arrows.size(); ++g)
        for (size_t f = 0; f < c.arrows.size(); ++f)
            if (c.compose_tab[f][g] >= 0) op.compose_tab[g][f] = c.compose_tab[f][g];
    return op;
}

int PointedFinCategory::zero_arrow(int x, int y) const {
    return base.compose(base.hom(zero, y).at(0), base.hom(x, zero).at(0));
}

bool PointedFinCategory::is_zero_arrow(int f) const {
    return f == zero_arrow(base.src(f), base.tgt(f));
}

void PointedFinCategory::validate() const {
    base.validate();
    const int n_obj = static_cast<int>(base.objects.size());
    for (int x = 0; x < n_obj; ++x) {
        if (base.hom(x, zero).size() != 1 || base.hom(zero, x).size() != 1)
            throw BadIdentity("object " + base.objects[x] + " does not see a strict zero object");
    }
    // Zero-arrow absorption.
    for (const Arrow& a : base.arrows) {
        int zf = zero_arrow(a.src, a.tgt);
        for (const Arrow& b : base.arrows) {
            if (base.composable(b.id, zf) && !is_zero_arrow(base.compose(b.id, zf)))
                throw AssociativityViolation("zero arrow not absorbing under postcomposition");
            if (base.composable(zf, b.id) && !is_zero_arrow(base.compose(zf, b.id)))
                throw AssociativityViolation("zero arrow not absorbing under precomposition");
        }
    }
}

PointedFinCategory free_pointed(const FinCategory& c) {
    return quotient_by_ideal(c, {}).cat;
}

QuotientResult quotient_by_ideal(const FinCategory& c, const std::set<int>& ideal) {
    for (int s : ideal) {
        for (const Arrow& a : c.arrows) {
            if (c.composable(a.id, s) && !ideal.count(c.compose(a.id, s)))
                throw NotAnIdeal("not closed under postcomposition at arrow " + std::to_string(s));
            if (c.composable(s, a.id) && !ideal.count(c.compose(s, a.id)))
                throw NotAnIdeal("not closed under precomposition at arrow " + std::to_string(s));
        }
    }
    QuotientResult out;
    FinCategory& q = out.cat.base;
    q.objects = c.objects;
    q.objects.push_back("0");
    const int zero_obj = static_cast<int>(c.objects.size());
    out.cat.zero = zero_obj;
    out.object_image.resize(c.objects.size());
    for (size_t x = 0; x < c.objects.size(); ++x) out.object_image[x] = static_cast<int>(x);
    for (size_t x = 0; x < c.objects.size(); ++x)
        if (ideal.count(c.identity[static_cast<int>(x)])) out.collapsed.push_back(static_cast<int>(x));

    // Surviving arrows keep id order, then one zero arrow per ordered
    // object pair (including the zero object).
    out.arrow_image.assign(c.arrows.size(), -1);
    for (const Arrow& a : c.arrows) {
        if (ideal.count(a.id)) continue;
        int nid = static_cast<int>(q.arrows.size());
        out.arrow_image[a.id] = nid;
        q.arrows.push_back({nid, a.src, a.tgt});
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
    for (size_t x = 0; x < c.objects.size(); ++x) {
        int old_id = c.identity[static_cast<int>(x)];
        q.identity[x] = ideal.count(old_id) ? zarrow[x][x] : out.arrow_image[old_id];
    }
    q.identity[zero_obj] = zarrow[zero_obj][zero_obj];

    const int n_arr = static_cast<int>(q.arrows.size());
    q.compose_tab.assign(n_arr, std::vector<int>(n_arr, -1));
    auto image = [&](int old_arrow) {
        int n = out.arrow_image[old_arrow];
        return n >= 0 ? n : zarrow[c.src(old_arrow)][c.tgt(old_arrow)];
    };
    // Default every composite to the zero arrow, then overwrite the pairs
    // of surviving arrows whose composite in c also survives.
    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f)
            if (q.composable(g, f)) q.compose_tab[g][f] = zarrow[q.src(f)][q.tgt(g)];
    std::vector<int> preimage(n_arr, -1);
    for (const Arrow& a : c.arrows)
        if (out.arrow_image[a.id] >= 0) preimage[out.arrow_image[a.id]] = a.id;
    for (int g = 0; g < n_arr; ++g) {
        if (preimage[g] < 0) continue;
        for (int f = 0; f < n_arr; ++f) {
            if (preimage[f] < 0 || !q.composable(g, f)) continue;
            q.compose_tab[g][f] = image(c.compose(preimage[g], preimage[f]));
        }
    }
    return out;
}

int ArrowClassSet::class_of(int arrow) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (std::binary_search(classes[i].begin(), classes[i].end(), arrow)) return static_cast<int>(i);
    throw std::out_of_range("arrow not in class set: " + std::to_string(arrow));
}

ArrowClassSet arrow_classes(const FinCategory& c, const std::vector<int>& arrows, ClassSide side) {
    std::vector<int> sorted = arrows;
    std::sort(sorted.begin(), sorted.end());
    auto related = [&](int f, int fp) {
        if (side == ClassSide::Source) {
            if (c.src(f) != c.src(fp)) return false;
            for (int h : c.hom(c.tgt(f), c.tgt(fp)))
                if (c.is_iso(h) && c.compose(h, f) == fp) return true;
        } else {
            if (c.tgt(f) != c.tgt(fp)) return false;
            for (int h : c.hom(c.src(fp), c.src(f)))
                if (c.is_iso(h) && c.compose(f, h) == fp) return true;
        }
        return false;
    };
    ArrowClassSet out;
    out.side = side;
    std::vector<bool> placed(sorted.size(), false);
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (placed[i]) continue;
        std::vector<int> cls{sorted[i]};
        placed[i] = true;
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (!placed[j] && related(sorted[i], sorted[j])) {
                cls.push_back(sorted[j]);
                placed[j] = true;
            }
        out.reps.push_back(cls.front());
        out.classes.push_back(std::move(cls));
    }
    return out;
}

bool arrows_isomorphic(const FinCategory& c, int f, int g) {
    for (int h : c.hom(c.src(f), c.src(g))) {
        if (!c.is_iso(h)) continue;
        for (int hp : c.hom(c.tgt(f), c.tgt(g)))
            if (c.is_iso(hp) && c.compose(hp, f) == c.compose(g, h)) return true;
    }
    return false;
}

std::string category_to_json(const FinCategory& c) {
    nlohmann::json j;
    j["objects"] = c.objects;
    nlohmann::json arrows = nlohmann::json::array();
    for (const Arrow& a : c.arrows)
        arrows.push_back({{"id", a.id}, {"src", c.objects[a.src]}, {"tgt", c.objects[a.tgt]}});
    j["arrows"] = arrows;
    nlohmann::json ident = nlohmann::json::object();
    for (size_t x = 0; x < c.objects.size(); ++x) ident[c.objects[x]] = c.identity[x];
    j["identity"] = ident;
    nlohmann::json comp = nlohmann::json::array();
    for (size_t g = 0; g < c.arrows.size(); ++g)
        for (size_t f = 0; f < c.arrows.size(); ++f)
            if (c.compose_tab[g][f] >= 0)
                comp.push_back({static_cast<int>(g), static_cast<int>(f), c.compose_tab[g][f]});
    j["compose"] = comp;
    return j.dump(2) + "\n";
}

FinCategory category_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FinCategory c;
    c.objects = j.at("objects").get<std::vector<std::string>>();
    for (const auto& a : j.at("arrows"))
        c.arrows.push_back({a.at("id").get<int>(), c.object_index(a.at("src").get<std::string>()),
                            c.object_index(a.at("tgt").get<std::string>())});
    std::sort(c.arrows.begin(), c.arrows.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    c.identity.resize(c.objects.size());
    for (auto it = j.at("identity").begin(); it != j.at("identity").end(); ++it)
        c.identity[c.object_index(it.key())] = it.value().get<int>();
    c.compose_tab.assign(c.arrows.size(), std::vector<int>(c.arrows.size(), -1));
    for (const auto& t : j.at("compose")) c.compose_tab[t.at(0).get<int>()][t.at(1).get<int>()] = t.at(2).get<int>();
    return validate_category(std::move(c));
}

}  // namespace dk
