#include "dk/dkequiv.hpp"

namespace dk {

namespace {

void require_over(const DKTriple& t, const MatDiagram& x) {
    if (x.shape.objects != t.B.objects || x.shape.arrows.size() != t.B.arrows.size())
        throw DimensionMismatch("diagram is not over the triple's base category");
}

// Non-invertible Epi row classes of the pairing at b, in the admissible
// order.
std::vector<int> ordered_noninv_rows(const FinCategory& B, const PairingData& p) {
    std::vector<int> out;
    for (int rc : p.order)
        if (!B.is_iso(p.rows.reps[rc])) out.push_back(rc);
    return out;
}

}  // namespace

NormalizationResult normalize(const DKTriple& t, const MatDiagram& x) {
    require_over(t, x);
    const FinCategory& B = t.B;
    const int n_obj = static_cast<int>(B.objects.size());

    EquivalenceWitness w;
    w.ring = x.ring;
    w.nbar.assign(n_obj, -1);
    w.incl.resize(n_obj);
    w.proj.resize(n_obj);
    w.s_mat.resize(n_obj);
    w.r_mat.resize(n_obj);
    w.phi.resize(n_obj);
    w.phi_blocks.resize(n_obj);
    w.block_order.resize(n_obj);

    for (int b : t.order.linear) {
        const PairingData& p = t.pairings[b];
        std::vector<int> ord = ordered_noninv_rows(B, p);

        // S: (+) over matched dual-Epi classes -> X_b, R: X_b -> (+) over
        // Epi classes, blocks in the admissible order.
        std::vector<Matrix> s_blocks, r_blocks;
        std::vector<int> sizes;
        for (int rc : ord) {
            int e = p.rows.reps[rc];
            int v = p.cols.reps[p.matching[rc]];
            int below_r = B.tgt(e), below_s = B.src(v);
            if (w.nbar[below_r] < 0 || w.nbar[below_s] < 0 || w.nbar[below_r] != w.nbar[below_s])
                throw PhiNotInvertible("induction order broken at object " + B.objects[b]);
            s_blocks.push_back(x.mat(v) * w.incl[below_s]);
            r_blocks.push_back(w.proj[below_r] * x.mat(e));
            sizes.push_back(w.nbar[below_r]);
            w.block_order[b].push_back(e);
        }
        Matrix s = Matrix::hcat(s_blocks, x.ring, x.dims[b]);
        Matrix r = Matrix::vcat(r_blocks, x.ring, x.dims[b]);
        Matrix phi = r * s;
        Matrix phi_inv;
        try {
            phi_inv = invert_unitriangular_block(phi, sizes);
        } catch (const std::exception& ex) {
            throw PhiNotInvertible(std::string("phi at object ") + B.objects[b] + ": " + ex.what());
        }
        auto [incl, proj] = complement_of_split_pair(s * phi_inv, r);
        w.s_mat[b] = std::move(s);
        w.r_mat[b] = std::move(r);
        w.phi[b] = std::move(phi);
        w.phi_blocks[b] = std::move(sizes);
        w.incl[b] = std::move(incl);
        w.proj[b] = std::move(proj);
        w.nbar[b] = w.incl[b].cols();

        // transport the witness to the other objects of the class along
        // the lowest-id iso
        for (int o = 0; o < n_obj; ++o) {
            if (o == b || t.order.rep[o] != b) continue;
            int u = B.iso_witness(o, b);
            Matrix mu = x.mat(u);
            w.incl[o] = inverse(mu) * w.incl[b];
            w.proj[o] = w.proj[b] * mu;
            w.nbar[o] = w.nbar[b];
            w.s_mat[o] = inverse(mu) * w.s_mat[b];
            w.r_mat[o] = w.r_mat[b] * mu;
        }
    }

    // witness identities, exactly
    for (int b = 0; b < n_obj; ++b) {
        if (!(w.proj[b] * w.incl[b]).is_identity())
            throw NotSplit("proj*incl != Id at object " + B.objects[b]);
        if (!(w.proj[b] * w.s_mat[b]).is_zero())
            throw NotSplit("proj*S != 0 at object " + B.objects[b]);
        if (!(w.r_mat[b] * w.incl[b]).is_zero())
            throw NotSplit("R*incl != 0 at object " + B.objects[b]);
    }

    // dimension conservation over all Epi classes (invertible ones
    // included)
    for (int b = 0; b < n_obj; ++b) {
        int total = 0;
        for (int e : t.pairings[b].rows.reps) total += w.nbar[B.tgt(e)];
        if (total != x.dims[b])
            throw DimensionConservationFailure("at object " + B.objects[b] + ": " +
                                               std::to_string(total) + " != " +
                                               std::to_string(x.dims[b]));
    }

    NormalizationResult out;
    out.n0 = build_N0(t);
    const PointedFinCategory& n0 = out.n0.n0;

    std::vector<int> dims(n0.base.objects.size(), 0);
    for (int b = 0; b < n_obj; ++b) dims[out.n0.object_of[b]] = w.nbar[b];
    std::map<int, int> mreg_of_arrow;  // n0 arrow -> B MReg arrow
    for (const auto& [m, a] : out.n0.arrow_of_mreg) mreg_of_arrow[a] = m;
    std::vector<Matrix> mats;
    for (const Arrow& a : n0.base.arrows) {
        auto it = mreg_of_arrow.find(a.id);
        if (it == mreg_of_arrow.end()) {
            mats.push_back(Matrix::zero(x.ring, dims[a.tgt], dims[a.src]));
        } else {
            int m = it->second;
            mats.push_back(w.proj[t.B.tgt(m)] * x.mat(m) * w.incl[t.B.src(m)]);
        }
    }
    out.normalized = validate_diagram(n0, x.ring, std::move(dims), std::move(mats));
    out.witness = std::move(w);
    return out;
}

namespace {

// Row/column block layout of a denormalized value: one block per Epi
// class out of b, sized by the normalized dimension at its target.
struct BlockLayout {
    std::vector<int> reps;     // Epi class rep arrows, class order
    std::vector<int> dims;     // block sizes
    std::vector<int> offsets;  // prefix sums, layout total at the back
};

BlockLayout layout_at(const DKTriple& t, const N0Result& n0, const MatDiagram& ybar, int b) {
    BlockLayout l;
    l.offsets.push_back(0);
    for (int e : t.pairings[b].rows.reps) {
        l.reps.push_back(e);
        l.dims.push_back(ybar.dims[n0.object_of[t.B.tgt(e)]]);
        l.offsets.push_back(l.offsets.back() + l.dims.back());
    }
    return l;
}

}  // namespace

MatDiagram denormalize(const DKTriple& t, const MatDiagram& ybar) {
    N0Result n0 = build_N0(t);
    if (ybar.shape.objects != n0.n0.base.objects ||
        ybar.shape.arrows.size() != n0.n0.base.arrows.size())
        throw DimensionMismatch("diagram is not over the triple's normalized shape");
    const FinCategory& B = t.B;

    std::vector<BlockLayout> layout;
    std::vector<int> dims;
    for (size_t b = 0; b < B.objects.size(); ++b) {
        layout.push_back(layout_at(t, n0, ybar, static_cast<int>(b)));
        dims.push_back(layout.back().offsets.back());
    }

    std::vector<Matrix> mats;
    for (const Arrow& f : B.arrows) {
        const BlockLayout& rows = layout[f.tgt];
        const BlockLayout& cols = layout[f.src];
        Matrix m(ybar.ring, dims[f.tgt], dims[f.src]);
        for (size_t ri = 0; ri < rows.reps.size(); ++ri) {
            int u = B.compose(rows.reps[ri], f.id);
            if (t.classes.sing.count(u)) continue;
            // the unique factorization u = mono . (column class rep)
            int hits = 0, col = -1, mono = -1;
            for (size_t ci = 0; ci < cols.reps.size(); ++ci)
                for (int mr : t.classes.mreg) {
                    if (!B.composable(mr, cols.reps[ci])) continue;
                    if (B.compose(mr, cols.reps[ci]) != u) continue;
                    ++hits;
                    col = static_cast<int>(ci);
                    mono = mr;
                }
            if (hits != 1)
                throw FactorizationAmbiguity("arrow " + std::to_string(u) + " admits " +
                                             std::to_string(hits) + " regular factorizations");
            const Matrix& block = ybar.mat(n0.arrow_of_mreg.at(mono));
            for (int r = 0; r < block.rows(); ++r)
                for (int c = 0; c < block.cols(); ++c)
                    m.at(rows.offsets[ri] + r, cols.offsets[col] + c) = block.at(r, c);
        }
        mats.push_back(std::move(m));
    }
    return validate_diagram(B, ybar.ring, std::move(dims), std::move(mats));
}

namespace {

bool natural_between(const MatDiagram& from, const MatDiagram& to,
                     const std::vector<Matrix>& comp) {
    for (const Arrow& f : from.shape.arrows)
        if (!(comp[f.tgt] * from.mat(f.id) == to.mat(f.id) * comp[f.src])) return false;
    return true;
}

}  // namespace

RoundtripResult roundtrip_check(const DKTriple& t, const MatDiagram& x) {
    NormalizationResult n = normalize(t, x);
    MatDiagram y = denormalize(t, n.normalized);
    RoundtripResult out;
    out.invertible = true;
    for (size_t b = 0; b < t.B.objects.size(); ++b) {
        std::vector<Matrix> blocks;
        for (int e : t.pairings[b].rows.reps)
            blocks.push_back(n.witness.proj[t.B.tgt(e)] * x.mat(e));
        out.theta.push_back(Matrix::vcat(blocks, x.ring, x.dims[b]));
        if (out.theta.back().rows() != out.theta.back().cols() ||
            !is_invertible(out.theta.back()))
            out.invertible = false;
    }
    out.natural = natural_between(x, y, out.theta);
    return out;
}

RoundtripResult reverse_roundtrip_check(const DKTriple& t, const MatDiagram& ybar) {
    MatDiagram y = denormalize(t, ybar);
    NormalizationResult n2 = normalize(t, y);
    N0Result n0 = build_N0(t);
    RoundtripResult out;
    out.invertible = true;
    // psi per n0 object: zero object gets the empty matrix
    out.theta.assign(n0.n0.base.objects.size(), Matrix(ybar.ring, 0, 0));
    for (size_t b = 0; b < t.B.objects.size(); ++b) {
        // inclusion of the identity-class summand Ybar_b -> Y_b
        BlockLayout l = layout_at(t, n0, ybar, static_cast<int>(b));
        int id_class = t.pairings[b].rows.class_of(t.B.identity[b]);
        Matrix inc(ybar.ring, l.offsets.back(), l.dims[id_class]);
        for (int i = 0; i < l.dims[id_class]; ++i) inc.at(l.offsets[id_class] + i, i) = 1;
        int nb = n0.object_of[b];
        out.theta[nb] = n2.witness.proj[b] * inc;
        if (out.theta[nb].rows() != out.theta[nb].cols() || !is_invertible(out.theta[nb]))
            out.invertible = false;
    }
    out.natural = natural_between(ybar, n2.normalized, out.theta);
    return out;
}

namespace {

// The category of non-invertible Epis under n (side = false) or
// non-invertible dual Epis over n (side = true), with the restricted
// diagram and the canonical (co)cone legs.
struct CommaDiagram {
    MatDiagram diag;
    std::vector<Matrix> legs;  // canonical cone / cocone at X_n
};

CommaDiagram comma_diagram(const DKTriple& t, const MatDiagram& x, int n, bool dual) {
    const FinCategory& B = t.B;
    std::vector<int> objs;  // the (dual) Epi arrows themselves
    for (const Arrow& a : B.arrows) {
        if (B.is_iso(a.id)) continue;
        if (!dual && t.E.count(a.id) && a.src == n) objs.push_back(a.id);
        if (dual && t.Ev.count(a.id) && a.tgt == n) objs.push_back(a.id);
    }
    FinCategory shape;
    std::vector<int> carrier;  // object index -> carrier object of B
    for (int e : objs) {
        shape.objects.push_back(std::to_string(e));
        carrier.push_back(dual ? B.src(e) : B.tgt(e));
    }
    struct Edge { int from, to, via; };
    std::vector<Edge> edges;
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j)
            for (int g : B.hom(carrier[i], carrier[j])) {
                bool ok = dual ? (t.Ev.count(g) && B.compose(objs[j], g) == objs[i])
                               : (t.E.count(g) && B.compose(g, objs[i]) == objs[j]);
                if (ok) edges.push_back({static_cast<int>(i), static_cast<int>(j), g});
            }
    auto edge_id = [&edges](int from, int to, int via) {
        for (size_t k = 0; k < edges.size(); ++k)
            if (edges[k].from == from && edges[k].to == to && edges[k].via == via)
                return static_cast<int>(k);
        throw FactorizationAmbiguity("comma category not closed under composition");
    };
    shape.identity.resize(objs.size());
    for (size_t k = 0; k < edges.size(); ++k)
        shape.arrows.push_back({static_cast<int>(k), edges[k].from, edges[k].to});
    for (size_t i = 0; i < objs.size(); ++i)
        shape.identity[i] = edge_id(static_cast<int>(i), static_cast<int>(i),
                                    B.identity[carrier[i]]);
    shape.compose_tab.assign(edges.size(), std::vector<int>(edges.size(), -1));
    for (size_t g = 0; g < edges.size(); ++g)
        for (size_t f = 0; f < edges.size(); ++f)
            if (edges[f].to == edges[g].from)
                shape.compose_tab[g][f] =
                    edge_id(edges[f].from, edges[g].to, B.compose(edges[g].via, edges[f].via));
    shape.validate();

    CommaDiagram out;
    std::vector<int> dims;
    std::vector<Matrix> mats;
    for (int c : carrier) dims.push_back(x.dims[c]);
    for (const Edge& e : edges) mats.push_back(x.mat(e.via));
    out.diag = validate_diagram(std::move(shape), x.ring, std::move(dims), std::move(mats));
    for (int e : objs) out.legs.push_back(x.mat(e));
    return out;
}

}  // namespace

AuditReport section_retraction_audit(const DKTriple& t, const MatDiagram& x, int n) {
    require_over(t, x);
    AuditReport rep;
    rep.object = n;
    rep.dim_x = x.dims[n];
    NormalizationResult nr = normalize(t, x);
    rep.dim_nbar = nr.witness.nbar[n];

    CommaDiagram under = comma_diagram(t, x, n, false);
    LimitResult lim = finite_limit(under.diag);
    Matrix to_lim = map_into_limit(under.diag, lim, under.legs, x.dims[n]);
    rep.dim_lim = lim.dim;

    CommaDiagram over = comma_diagram(t, x, n, true);
    ColimitResult colim = finite_colimit(over.diag);
    Matrix from_colim = map_from_colimit(over.diag, colim, over.legs, x.dims[n]);
    rep.dim_colim = colim.dim;

    Matrix composite = to_lim * from_colim;
    rep.composite_iso =
        composite.rows() == composite.cols() && (composite.rows() == 0 || is_invertible(composite));
    rep.dims_consistent =
        rep.dim_x == rep.dim_colim + rep.dim_nbar && rep.dim_x == rep.dim_lim + rep.dim_nbar;
    int ker_dim = kernel_basis(to_lim).cols();
    int coker_dim = x.dims[n] - rank(from_colim);
    rep.kernel_matches = ker_dim == rep.dim_nbar && coker_dim == rep.dim_nbar;
    return rep;
}

KanReport kan_detector(const DKTriple& t, const MatDiagram& x, int n) {
    if (!is_partially_monotone(t))
        throw NotPartiallyMonotone("kan detection needs a partially monotone triple");
    require_over(t, x);
    KanReport rep;
    rep.vanishing = normalize(t, x).witness.nbar[n] == 0;
    CommaDiagram under = comma_diagram(t, x, n, false);
    LimitResult lim = finite_limit(under.diag);
    Matrix to_lim = map_into_limit(under.diag, lim, under.legs, x.dims[n]);
    rep.limit_cone_iso =
        to_lim.rows() == to_lim.cols() && (to_lim.rows() == 0 || is_invertible(to_lim));
    return rep;
}

int object_level(const DKTriple& t, int n) {
    int r = t.order.rep[n];
    int level = 0;
    std::set<int> seen;
    for (size_t o = 0; o < t.B.objects.size(); ++o) {
        int s = t.order.rep[o];
        if (s != r && t.order.leq[s][r] && seen.insert(s).second) ++level;
    }
    return level;
}

bool truncation_detector(const DKTriple& t, const MatDiagram& x, int k) {
    if (!is_partially_monotone(t))
        throw NotPartiallyMonotone("truncation detection needs a partially monotone triple");
    NormalizationResult nr = normalize(t, x);
    for (int b : t.order.linear)
        if (object_level(t, b) > k && nr.witness.nbar[b] != 0) return false;
    return true;
}

}  // namespace dk
