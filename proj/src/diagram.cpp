#include "dk/diagram.hpp"

#include <json.hpp>

namespace dk {

namespace {

using nlohmann::json;

void scan(const MatDiagram& d) {
    const FinCategory& c = d.shape;
    if (d.dims.size() != c.objects.size() || d.mats.size() != c.arrows.size())
        throw FunctorialityViolation("dims/mats tables do not match the shape");
    for (const Arrow& a : c.arrows) {
        const Matrix& m = d.mats[a.id];
        if (m.rows() != d.dims[a.tgt] || m.cols() != d.dims[a.src])
            throw FunctorialityViolation("matrix of arrow " + std::to_string(a.id) +
                                         " has the wrong shape");
        if (m.ring() != d.ring)
            throw FunctorialityViolation("matrix of arrow " + std::to_string(a.id) +
                                         " lives over the wrong ring");
    }
    for (int id : c.identity)
        if (!d.mats[id].is_identity())
            throw FunctorialityViolation("identity arrow " + std::to_string(id) +
                                         " is not the identity matrix");
    for (const Arrow& g : c.arrows)
        for (const Arrow& f : c.arrows) {
            if (!c.composable(g.id, f.id)) continue;
            if (!(d.mats[c.compose(g.id, f.id)] == d.mats[g.id] * d.mats[f.id]))
                throw FunctorialityViolation("mat(g.f) != mat(g)*mat(f) at g=" +
                                             std::to_string(g.id) + " f=" + std::to_string(f.id));
        }
}

}  // namespace

MatDiagram validate_diagram(FinCategory shape, Ring ring, std::vector<int> dims,
                            std::vector<Matrix> mats) {
    MatDiagram d;
    d.shape = std::move(shape);
    d.ring = ring;
    d.dims = std::move(dims);
    d.mats = std::move(mats);
    scan(d);
    return d;
}

MatDiagram validate_diagram(const PointedFinCategory& shape, Ring ring, std::vector<int> dims,
                            std::vector<Matrix> mats) {
    if (shape.zero >= 0 && shape.zero < static_cast<int>(dims.size()) && dims[shape.zero] != 0)
        throw PointednessViolation("zero object must have dimension 0");
    MatDiagram d = validate_diagram(shape.base, ring, std::move(dims), std::move(mats));
    d.pointed = true;
    d.zero_object = shape.zero;
    return d;
}

namespace {

MatDiagram representable_impl(const FinCategory& c, int base, Ring ring,
                              const std::function<bool(int)>& keep) {
    MatDiagram d;
    d.shape = c;
    d.ring = ring;
    // basis of the value at b: arrows base -> b surviving `keep`, by id
    std::vector<std::vector<int>> basis(c.objects.size());
    for (size_t b = 0; b < c.objects.size(); ++b)
        for (int h : c.hom(base, static_cast<int>(b)))
            if (keep(h)) basis[b].push_back(h);
    d.dims.resize(c.objects.size());
    for (size_t b = 0; b < c.objects.size(); ++b) d.dims[b] = static_cast<int>(basis[b].size());
    d.mats.reserve(c.arrows.size());
    for (const Arrow& f : c.arrows) {
        Matrix m(ring, d.dims[f.tgt], d.dims[f.src]);
        for (int col = 0; col < d.dims[f.src]; ++col) {
            int image = c.compose(f.id, basis[f.src][col]);
            if (!keep(image)) continue;
            auto it = std::find(basis[f.tgt].begin(), basis[f.tgt].end(), image);
            m.at(static_cast<int>(it - basis[f.tgt].begin()), col) = 1;
        }
        d.mats.push_back(std::move(m));
    }
    scan(d);
    return d;
}

}  // namespace

MatDiagram representable(const FinCategory& shape, int c, Ring ring) {
    return representable_impl(shape, c, ring, [](int) { return true; });
}

MatDiagram representable(const PointedFinCategory& shape, int c, Ring ring) {
    MatDiagram d = representable_impl(shape.base, c, ring,
                                      [&shape](int h) { return !shape.is_zero_arrow(h); });
    d.pointed = true;
    d.zero_object = shape.zero;
    return d;
}

MatDiagram linearize_set_functor(const SetFunctor& f, Ring ring, bool reduced) {
    MatDiagram d;
    d.shape = f.shape;
    d.ring = ring;
    const int drop = reduced ? 1 : 0;
    d.dims.resize(f.sizes.size());
    for (size_t b = 0; b < f.sizes.size(); ++b) d.dims[b] = std::max(0, f.sizes[b] - drop);
    d.mats.reserve(f.shape.arrows.size());
    for (const Arrow& a : f.shape.arrows) {
        Matrix m(ring, d.dims[a.tgt], d.dims[a.src]);
        for (int i = drop; i < f.sizes[a.src]; ++i) {
            int v = f.action[a.id][i];
            if (v < drop) continue;  // basepoint / undefined -> zero
            m.at(v - drop, i - drop) = 1;
        }
        d.mats.push_back(std::move(m));
    }
    scan(d);
    return d;
}

namespace {

std::vector<int> offsets_of(const std::vector<int>& dims) {
    std::vector<int> off(dims.size() + 1, 0);
    for (size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
    return off;
}

// accumulates, because the mat(f) and -Id blocks of an endomorphism
// arrow overlap
void add_block(Matrix& into, const Matrix& block, int r0, int c0, bool negate) {
    for (int r = 0; r < block.rows(); ++r)
        for (int c = 0; c < block.cols(); ++c) {
            BigRat v = into.at(r0 + r, c0 + c) + (negate ? -block.at(r, c) : block.at(r, c));
            into.set(r0 + r, c0 + c, std::move(v));
        }
}

}  // namespace

LimitResult finite_limit(const MatDiagram& d) {
    std::vector<int> obj_off = offsets_of(d.dims);
    std::vector<int> arr_dims;
    for (const Arrow& a : d.shape.arrows) arr_dims.push_back(d.dims[a.tgt]);
    std::vector<int> arr_off = offsets_of(arr_dims);
    // difference map: (x_j)_j -> (mat(f) x_{src f} - x_{tgt f})_f
    Matrix diff(d.ring, arr_off.back(), obj_off.back());
    for (const Arrow& a : d.shape.arrows) {
        add_block(diff, d.mats[a.id], arr_off[a.id], obj_off[a.src], false);
        add_block(diff, Matrix::identity(d.ring, d.dims[a.tgt]), arr_off[a.id], obj_off[a.tgt],
                   true);
    }
    Matrix k = kernel_basis(diff);
    LimitResult out;
    out.dim = k.cols();
    for (size_t b = 0; b < d.dims.size(); ++b)
        out.legs.push_back(k.sub_rows(obj_off[b], d.dims[b]));
    return out;
}

ColimitResult finite_colimit(const MatDiagram& d) {
    std::vector<int> obj_off = offsets_of(d.dims);
    std::vector<int> arr_dims;
    for (const Arrow& a : d.shape.arrows) arr_dims.push_back(d.dims[a.src]);
    std::vector<int> arr_off = offsets_of(arr_dims);
    // dual map: (y_f)_f -> sum_f (mat(f) y_f at tgt f  -  y_f at src f)
    Matrix psi(d.ring, obj_off.back(), arr_off.back());
    for (const Arrow& a : d.shape.arrows) {
        add_block(psi, d.mats[a.id], obj_off[a.tgt], arr_off[a.id], false);
        add_block(psi, Matrix::identity(d.ring, d.dims[a.src]), obj_off[a.src], arr_off[a.id],
                   true);
    }
    // rows of q form a basis of the left kernel: q is the cokernel
    // projection
    Matrix q = kernel_basis(psi.transpose()).transpose();
    ColimitResult out;
    out.dim = q.rows();
    for (size_t b = 0; b < d.dims.size(); ++b)
        out.legs.push_back(q.sub_cols(obj_off[b], d.dims[b]));
    return out;
}

Matrix map_into_limit(const MatDiagram& d, const LimitResult& lim, const std::vector<Matrix>& cone,
                      int cone_dim) {
    Matrix k = Matrix::vcat(lim.legs, d.ring, lim.dim);
    Matrix c = Matrix::vcat(cone, d.ring, cone_dim);
    return solve(k, c);
}

Matrix map_from_colimit(const MatDiagram& d, const ColimitResult& colim,
                        const std::vector<Matrix>& cocone, int cocone_dim) {
    Matrix q = Matrix::hcat(colim.legs, d.ring, colim.dim);
    Matrix w = Matrix::hcat(cocone, d.ring, cocone_dim);
    // w kills ker q (it is a cocone), so w = u q for the unique u; read u
    // off a right inverse of q
    Matrix z = solve(q, Matrix::identity(d.ring, colim.dim));
    return w * z;
}

MatDiagram opposite_diagram(const MatDiagram& d) {
    MatDiagram op;
    op.shape = opposite(d.shape);
    op.pointed = d.pointed;
    op.zero_object = d.zero_object;
    op.ring = d.ring;
    op.dims = d.dims;
    op.mats.reserve(d.mats.size());
    for (const Matrix& m : d.mats) op.mats.push_back(m.transpose());
    scan(op);
    return op;
}

DiagramFile diagram_to_file(const MatDiagram& d, const std::string& shape_ref) {
    DiagramFile f;
    f.shape_ref = shape_ref;
    f.ring = d.ring;
    for (size_t b = 0; b < d.shape.objects.size(); ++b) f.dims[d.shape.objects[b]] = d.dims[b];
    for (const Arrow& a : d.shape.arrows) {
        std::vector<std::string> entries;
        const Matrix& m = d.mats[a.id];
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                entries.push_back(scalar_to_string(d.ring, m.at(r, c)));
        f.mats[a.id] = std::move(entries);
    }
    return f;
}

std::string diagram_file_to_json(const DiagramFile& f) {
    json j;
    j["shape"] = f.shape_ref;
    j["ring"] = f.ring.to_string();
    j["dims"] = json::object();
    for (const auto& [name, dim] : f.dims) j["dims"][name] = dim;
    j["matrices"] = json::object();
    for (const auto& [id, entries] : f.mats) j["matrices"][std::to_string(id)] = entries;
    return j.dump(2) + "\n";
}

DiagramFile diagram_file_from_json(const std::string& text) {
    json j = json::parse(text);
    DiagramFile f;
    f.shape_ref = j.at("shape").get<std::string>();
    f.ring = Ring::parse(j.at("ring").get<std::string>());
    for (const auto& [name, dim] : j.at("dims").items()) f.dims[name] = dim.get<int>();
    for (const auto& [id, entries] : j.at("matrices").items())
        f.mats[std::stoi(id)] = entries.get<std::vector<std::string>>();
    return f;
}

namespace {

MatDiagram realize(const DiagramFile& f, const FinCategory& shape) {
    std::vector<int> dims(shape.objects.size());
    for (size_t b = 0; b < shape.objects.size(); ++b) dims[b] = f.dims.at(shape.objects[b]);
    std::vector<Matrix> mats;
    for (const Arrow& a : shape.arrows) {
        const std::vector<std::string>& entries = f.mats.at(a.id);
        Matrix m(f.ring, dims[a.tgt], dims[a.src]);
        if (static_cast<int>(entries.size()) != m.rows() * m.cols())
            throw FunctorialityViolation("entry count of arrow " + std::to_string(a.id) +
                                         " does not match its declared shape");
        int i = 0;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) m.at(r, c) = scalar_parse(f.ring, entries[i++]);
        mats.push_back(std::move(m));
    }
    MatDiagram d;
    d.shape = shape;
    d.ring = f.ring;
    d.dims = std::move(dims);
    d.mats = std::move(mats);
    scan(d);
    return d;
}

}  // namespace

MatDiagram diagram_from_file(const DiagramFile& f, const FinCategory& shape) {
    return realize(f, shape);
}

MatDiagram diagram_from_file(const DiagramFile& f, const PointedFinCategory& shape) {
    MatDiagram d = realize(f, shape.base);
    if (d.dims[shape.zero] != 0) throw PointednessViolation("zero object must have dimension 0");
    d.pointed = true;
    d.zero_object = shape.zero;
    return d;
}

}  // namespace dk
