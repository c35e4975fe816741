#include "strata/module.hpp"

#include <algorithm>
#include <set>

#include "strata/errors.hpp"

namespace strata::rep {

namespace {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9E3779B97f4A7C15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

constexpr uint64_t kSeed = 0x5717A;

}  // namespace

FunctorModule::FunctorModule(cat::CategoryPtr c, PrimeField F, std::vector<uint32_t> dims,
                             std::vector<DenseMat> action)
    : cat_(std::move(c)), F_(F), dims_(std::move(dims)), act_(std::move(action)) {
    const cat::FiniteCategory& C = *cat_;
    if (dims_.size() != C.objects()) throw std::invalid_argument("module dimension vector size mismatch");
    if (act_.size() != C.morphisms()) throw std::invalid_argument("module action list size mismatch");
    offset_.resize(dims_.size());
    total_ = 0;
    for (std::size_t x = 0; x < dims_.size(); ++x) {
        offset_[x] = total_;
        total_ += dims_[x];
    }
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        if (act_[m].rows() != dims_[C.dst(m)] || act_[m].cols() != dims_[C.src(m)] || act_[m].p() != F_.p())
            throw std::invalid_argument("module action matrix shape mismatch");
    }
    // Functoriality, exhaustively.
    for (uint32_t x = 0; x < C.objects(); ++x)
        if (!(act_[C.identity(x)] == DenseMat::identity(dims_[x], F_.p())))
            throw std::invalid_argument("module does not send identities to identities");
    for (uint32_t g = 0; g < C.morphisms(); ++g)
        for (uint32_t f = 0; f < C.morphisms(); ++f) {
            int32_t c = C.compose(g, f);
            if (c == cat::FiniteCategory::undefined) continue;
            if (!(act_[g].mul(act_[f]) == act_[static_cast<uint32_t>(c)]))
                throw std::invalid_argument("module action is not functorial");
        }
}

FunctorModule FunctorModule::trivial(cat::CategoryPtr c, PrimeField F) {
    std::vector<uint32_t> dims(c->objects(), 1);
    std::vector<DenseMat> act(c->morphisms(), DenseMat::identity(1, F.p()));
    return FunctorModule(std::move(c), F, std::move(dims), std::move(act));
}

FunctorModule FunctorModule::zero(cat::CategoryPtr c, PrimeField F) {
    std::vector<uint32_t> dims(c->objects(), 0);
    std::vector<DenseMat> act(c->morphisms(), DenseMat(0, 0, F.p()));
    return FunctorModule(std::move(c), F, std::move(dims), std::move(act));
}

Vec FunctorModule::mor_apply(uint32_t m, const Vec& v) const {
    const cat::FiniteCategory& C = *cat_;
    Vec out(total_, 0);
    const uint32_t s = C.src(m), d = C.dst(m);
    Vec in(dims_[s]);
    for (uint32_t i = 0; i < dims_[s]; ++i) in[i] = v[offset_[s] + i];
    Vec img = act_[m].apply(in);
    for (uint32_t i = 0; i < dims_[d]; ++i) out[offset_[d] + i] = img[i];
    return out;
}

Vec FunctorModule::alg_apply(const Vec& a, const Vec& v) const {
    Vec out(total_, 0);
    for (uint32_t m = 0; m < act_.size(); ++m) {
        if (!a[m]) continue;
        Vec term = mor_apply(m, v);
        fp::active_kernels().axpy(out.data(), term.data(), a[m], total_, F_.p());
    }
    return out;
}

FunctorModule constant_module(const cat::TransporterCategory& T, PrimeField F,
                              const std::vector<DenseMat>& group_matrices) {
    const grp::FiniteGroup& G = *T.group;
    if (group_matrices.size() != G.order()) throw std::invalid_argument("one matrix per group element required");
    const uint32_t d = static_cast<uint32_t>(group_matrices[0].rows());
    for (const DenseMat& m : group_matrices)
        if (m.rows() != d || m.cols() != d) throw std::invalid_argument("group matrices must be square of equal size");
    // Representation check: M(g)M(h) = M(gh), M(e) = I.
    if (!(group_matrices[G.identity()] == DenseMat::identity(d, F.p())))
        throw std::invalid_argument("identity matrix missing in group representation");
    for (uint32_t g = 0; g < G.order(); ++g)
        for (uint32_t h = 0; h < G.order(); ++h)
            if (!(group_matrices[g].mul(group_matrices[h]) == group_matrices[G.mul(g, h)]))
                throw std::invalid_argument("matrices do not define a group representation");

    const cat::FiniteCategory& C = *T.cat;
    std::vector<uint32_t> dims(C.objects(), d);
    std::vector<DenseMat> act;
    act.reserve(C.morphisms());
    for (uint32_t m = 0; m < C.morphisms(); ++m) act.push_back(group_matrices[T.payload[m][0]]);
    return FunctorModule(T.cat, F, std::move(dims), std::move(act));
}

std::vector<DenseMat> regular_rep(const grp::FiniteGroup& G, PrimeField F) {
    std::vector<DenseMat> out;
    for (uint32_t g = 0; g < G.order(); ++g) {
        DenseMat m(G.order(), G.order(), F.p());
        for (uint32_t h = 0; h < G.order(); ++h) m.set(G.mul(g, h), h, 1);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<DenseMat> trivial_rep(const grp::FiniteGroup& G, PrimeField F) {
    return std::vector<DenseMat>(G.order(), DenseMat::identity(1, F.p()));
}

FunctorModule group_module(cat::CategoryPtr group_cat, PrimeField F, const std::vector<DenseMat>& matrices) {
    if (group_cat->objects() != 1) throw std::invalid_argument("group_module needs a one-object category");
    std::vector<uint32_t> dims{static_cast<uint32_t>(matrices[0].rows())};
    std::vector<DenseMat> act = matrices;
    return FunctorModule(std::move(group_cat), F, std::move(dims), std::move(act));
}

FunctorModule atomic_truncation(const FunctorModule& M, uint32_t object) {
    const cat::FiniteCategory& C = M.category();
    auto classes = C.iso_classes();
    std::vector<bool> in_class(C.objects(), false);
    for (const auto& cls : classes)
        if (std::find(cls.begin(), cls.end(), object) != cls.end())
            for (uint32_t x : cls) in_class[x] = true;
    std::vector<uint32_t> dims(C.objects(), 0);
    for (uint32_t x = 0; x < C.objects(); ++x)
        if (in_class[x]) dims[x] = M.dim(x);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        if (in_class[C.src(m)] && in_class[C.dst(m)])
            act.push_back(M.action(m));
        else
            act.push_back(DenseMat(dims[C.dst(m)], dims[C.src(m)], M.field().p()));
    }
    return FunctorModule(M.category_ptr(), M.field(), std::move(dims), std::move(act));
}

FunctorModule atomic_kernel(const FunctorModule& M, uint32_t object) {
    const cat::FiniteCategory& C = M.category();
    auto classes = C.iso_classes();
    std::vector<bool> in_class(C.objects(), false);
    for (const auto& cls : classes)
        if (std::find(cls.begin(), cls.end(), object) != cls.end())
            for (uint32_t x : cls) in_class[x] = true;
    // Minimality of [x] among M-objects: no M-object strictly below.
    for (uint32_t y = 0; y < C.objects(); ++y) {
        if (M.dim(y) == 0 || in_class[y]) continue;
        if (!C.hom(y, object).empty() && C.hom(object, y).empty())
            throw std::invalid_argument("atomic kernel needs a minimal M-object class");
    }
    std::vector<uint32_t> dims(C.objects());
    for (uint32_t x = 0; x < C.objects(); ++x) dims[x] = in_class[x] ? 0 : M.dim(x);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        if (!in_class[C.src(m)] && !in_class[C.dst(m)])
            act.push_back(M.action(m));
        else
            act.push_back(DenseMat(dims[C.dst(m)], dims[C.src(m)], M.field().p()));
    }
    return FunctorModule(M.category_ptr(), M.field(), std::move(dims), std::move(act));
}

FunctorModule direct_sum(const FunctorModule& A, const FunctorModule& B) {
    if (A.category_ptr() != B.category_ptr()) throw std::invalid_argument("direct sum needs a common category");
    const cat::FiniteCategory& C = A.category();
    const uint32_t p = A.field().p();
    std::vector<uint32_t> dims(C.objects());
    for (uint32_t x = 0; x < C.objects(); ++x) dims[x] = A.dim(x) + B.dim(x);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        DenseMat d(dims[C.dst(m)], dims[C.src(m)], p);
        const DenseMat& a = A.action(m);
        const DenseMat& b = B.action(m);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) d.set(i, j, a.at(i, j));
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) d.set(A.dim(C.dst(m)) + i, A.dim(C.src(m)) + j, b.at(i, j));
        act.push_back(std::move(d));
    }
    return FunctorModule(A.category_ptr(), A.field(), std::move(dims), std::move(act));
}

FunctorModule tensor_hat(const FunctorModule& A, const FunctorModule& B) {
    if (A.category_ptr() != B.category_ptr()) throw std::invalid_argument("tensor needs a common category");
    const cat::FiniteCategory& C = A.category();
    std::vector<uint32_t> dims(C.objects());
    for (uint32_t x = 0; x < C.objects(); ++x) dims[x] = A.dim(x) * B.dim(x);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) act.push_back(A.action(m).kron(B.action(m)));
    return FunctorModule(A.category_ptr(), A.field(), std::move(dims), std::move(act));
}

std::vector<DenseMat> tensor_swap_iso(const FunctorModule& A, const FunctorModule& B) {
    const cat::FiniteCategory& C = A.category();
    std::vector<DenseMat> out;
    for (uint32_t x = 0; x < C.objects(); ++x) {
        const uint32_t a = A.dim(x), b = B.dim(x);
        DenseMat s(a * b, a * b, A.field().p());
        for (uint32_t i = 0; i < a; ++i)
            for (uint32_t j = 0; j < b; ++j) s.set(j * a + i, i * b + j, 1);
        out.push_back(std::move(s));
    }
    return out;
}

FunctorModule k_dual(const FunctorModule& M, cat::CategoryPtr opposite) {
    const cat::FiniteCategory& C = M.category();
    if (opposite->morphisms() != C.morphisms() || opposite->objects() != C.objects())
        throw std::invalid_argument("opposite category size mismatch");
    std::vector<uint32_t> dims = M.dims();
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) act.push_back(M.action(m).transpose());
    return FunctorModule(std::move(opposite), M.field(), std::move(dims), std::move(act));
}

FunctorModule restrict_along(const cat::Functor& tau, const FunctorModule& M) {
    if (tau.target.get() != &M.category()) throw std::invalid_argument("functor target is not the module category");
    const cat::FiniteCategory& D = *tau.source;
    std::vector<uint32_t> dims(D.objects());
    for (uint32_t x = 0; x < D.objects(); ++x) dims[x] = M.dim(tau.obj_map[x]);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < D.morphisms(); ++m) act.push_back(M.action(tau.mor_map[m]));
    return FunctorModule(tau.source, M.field(), std::move(dims), std::move(act));
}

FunctorModule hom_functor_module(cat::CategoryPtr c, PrimeField F, uint32_t x) {
    const cat::FiniteCategory& C = *c;
    std::vector<uint32_t> dims(C.objects());
    for (uint32_t y = 0; y < C.objects(); ++y) dims[y] = static_cast<uint32_t>(C.hom(x, y).size());
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        const auto& from = C.hom(x, C.src(m));
        const auto& to = C.hom(x, C.dst(m));
        DenseMat mat(static_cast<uint32_t>(to.size()), static_cast<uint32_t>(from.size()), F.p());
        for (std::size_t j = 0; j < from.size(); ++j) {
            int32_t composite = C.compose(m, from[j]);
            if (composite == cat::FiniteCategory::undefined) throw std::logic_error("hom functor composition undefined");
            auto it = std::find(to.begin(), to.end(), static_cast<uint32_t>(composite));
            mat.set(static_cast<uint32_t>(it - to.begin()), j, 1);
        }
        act.push_back(std::move(mat));
    }
    return FunctorModule(std::move(c), F, std::move(dims), std::move(act));
}

std::vector<std::vector<DenseMat>> hom_space(const FunctorModule& M, const FunctorModule& N) {
    if (M.category_ptr() != N.category_ptr()) throw std::invalid_argument("hom space needs a common category");
    const cat::FiniteCategory& C = M.category();
    const uint32_t p = M.field().p();
    // Unknowns: per object x, a dim N(x) x dim M(x) matrix.
    std::vector<uint32_t> var_offset(C.objects() + 1, 0);
    for (uint32_t x = 0; x < C.objects(); ++x) var_offset[x + 1] = var_offset[x] + N.dim(x) * M.dim(x);
    const uint32_t nvars = var_offset[C.objects()];
    fp::RowBasis constraints(nvars, p);
    PrimeField F = M.field();
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        const uint32_t s = C.src(m), d = C.dst(m);
        // phi_d * T^M_m - T^N_m * phi_s = 0: one equation per (i, j).
        for (uint32_t i = 0; i < N.dim(d); ++i)
            for (uint32_t j = 0; j < M.dim(s); ++j) {
                Vec row(nvars, 0);
                for (uint32_t k = 0; k < M.dim(d); ++k) {
                    uint32_t v = var_offset[d] + i * M.dim(d) + k;
                    row[v] = F.add(row[v], M.action(m).at(k, j));
                }
                for (uint32_t k = 0; k < N.dim(s); ++k) {
                    uint32_t v = var_offset[s] + k * M.dim(s) + j;
                    row[v] = F.sub(row[v], N.action(m).at(i, k));
                }
                constraints.add(std::move(row));
            }
    }
    std::vector<Vec> sols = constraints.nullspace();
    std::vector<std::vector<DenseMat>> out;
    for (const Vec& sol : sols) {
        std::vector<DenseMat> phi;
        for (uint32_t x = 0; x < C.objects(); ++x) {
            DenseMat mat(N.dim(x), M.dim(x), p);
            for (uint32_t i = 0; i < N.dim(x); ++i)
                for (uint32_t j = 0; j < M.dim(x); ++j) mat.set(i, j, sol[var_offset[x] + i * M.dim(x) + j]);
            phi.push_back(std::move(mat));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

FunctorModule internal_hom(const FunctorModule& M, const FunctorModule& N) {
    if (M.category_ptr() != N.category_ptr()) throw std::invalid_argument("internal hom needs a common category");
    const cat::FiniteCategory& C = M.category();
    if (!C.is_ei()) throw std::invalid_argument("internal hom implemented for EI categories only");
    PrimeField F = M.field();

    // H(x) = Hom_kC(kHom(x,-) (x) M, N), covariant via precomposition with
    // the natural maps kHom(x',-) -> kHom(x,-) induced by alpha: x -> x'.
    std::vector<std::vector<std::vector<DenseMat>>> bases;  // per object: basis of intertwiners
    std::vector<FunctorModule> tensors;
    for (uint32_t x = 0; x < C.objects(); ++x) {
        FunctorModule Px = hom_functor_module(M.category_ptr(), F, x);
        tensors.push_back(tensor_hat(Px, M));
        bases.push_back(hom_space(tensors.back(), N));
    }
    std::vector<uint32_t> dims;
    for (const auto& b : bases) dims.push_back(static_cast<uint32_t>(b.size()));

    // Express the image of a basis intertwiner under alpha in the target
    // basis by flattening and solving.
    auto flatten = [&](uint32_t x, const std::vector<DenseMat>& phi) {
        Vec v;
        for (uint32_t y = 0; y < C.objects(); ++y)
            for (std::size_t i = 0; i < phi[y].rows(); ++i)
                for (std::size_t j = 0; j < phi[y].cols(); ++j) v.push_back(phi[y].at(i, j));
        (void)x;
        return v;
    };

    std::vector<DenseMat> act;
    for (uint32_t a = 0; a < C.morphisms(); ++a) {
        const uint32_t x = C.src(a), xp = C.dst(a);
        // phi in H(x) maps to phi' in H(x') with
        // phi'_y(f' (x) m) = phi_y((f' a) (x) m) for f' in Hom(x', y).
        fp::RowBasis target_basis(0, F.p());
        // Build coordinates of the images in the span of bases[xp].
        std::vector<Vec> target_flat;
        for (const auto& phi : bases[xp]) target_flat.push_back(flatten(xp, phi));
        const uint32_t width = target_flat.empty() ? 0 : static_cast<uint32_t>(target_flat[0].size());
        DenseMat sys(width, dims[xp], F.p());
        for (uint32_t j = 0; j < dims[xp]; ++j)
            for (uint32_t i = 0; i < width; ++i) sys.set(i, j, target_flat[j][i]);

        DenseMat mat(dims[xp], dims[x], F.p());
        for (uint32_t j = 0; j < dims[x]; ++j) {
            const auto& phi = bases[x][j];
            // Image intertwiner on kHom(x',-) (x) M.
            std::vector<DenseMat> img;
            for (uint32_t y = 0; y < C.objects(); ++y) {
                const auto& from = C.hom(xp, y);
                DenseMat block(N.dim(y), static_cast<uint32_t>(from.size()) * M.dim(y), F.p());
                for (std::size_t fi = 0; fi < from.size(); ++fi) {
                    int32_t fa = C.compose(from[fi], a);
                    if (fa == cat::FiniteCategory::undefined) throw std::logic_error("internal hom composition undefined");
                    const auto& base_from = C.hom(x, y);
                    auto it = std::find(base_from.begin(), base_from.end(), static_cast<uint32_t>(fa));
                    std::size_t pos = static_cast<std::size_t>(it - base_from.begin());
                    for (uint32_t mm = 0; mm < M.dim(y); ++mm)
                        for (uint32_t i = 0; i < N.dim(y); ++i)
                            block.set(i, fi * M.dim(y) + mm, phi[y].at(i, pos * M.dim(y) + mm));
                }
                img.push_back(std::move(block));
            }
            Vec img_flat = flatten(xp, img);
            auto coords = fp::solve(sys, img_flat);
            if (!coords) throw VerificationError("internal hom image escaped the intertwiner space");
            for (uint32_t i = 0; i < dims[xp]; ++i) mat.set(i, j, (*coords)[i]);
        }
        act.push_back(std::move(mat));
    }
    return FunctorModule(M.category_ptr(), F, std::move(dims), std::move(act));
}

FunctorModule bimodule_of_algebra(const alg::CategoryAlgebra& A, cat::CategoryPtr envelope,
                                  const Vec* block_idempotent) {
    const cat::FiniteCategory& C = A.category();
    const cat::FiniteCategory& E = *envelope;
    PrimeField F = A.field();
    const uint32_t nob = C.objects(), nmor = C.morphisms();
    if (E.objects() != nob * nob || E.morphisms() != static_cast<uint32_t>(nmor) * nmor)
        throw std::invalid_argument("envelope category size mismatch");

    // Value at (x, y): e * kHom(y, x) as a subspace of kC.
    std::vector<fp::RowBasis> val;  // per envelope object, basis inside kC
    val.reserve(nob * nob);
    for (uint32_t x = 0; x < nob; ++x)
        for (uint32_t y = 0; y < nob; ++y) {
            fp::RowBasis rb(A.dim(), F.p());
            for (uint32_t f : C.hom(y, x)) {
                Vec v(A.dim(), 0);
                v[f] = 1;
                if (block_idempotent) v = A.mul(*block_idempotent, v);
                rb.add(std::move(v));
            }
            val.push_back(std::move(rb));
        }
    std::vector<uint32_t> dims;
    for (const auto& rb : val) dims.push_back(static_cast<uint32_t>(rb.rank()));

    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < E.morphisms(); ++m) {
        const uint32_t alpha = m / nmor;        // morphism of C
        const uint32_t beta = m % nmor;         // morphism of C^op, i.e. of C reversed
        const uint32_t so = E.src(m), dd = E.dst(m);
        DenseMat mat(dims[dd], dims[so], F.p());
        Vec ea(A.dim(), 0), eb(A.dim(), 0);
        ea[alpha] = 1;
        eb[beta] = 1;
        for (uint32_t j = 0; j < dims[so]; ++j) {
            Vec img = A.mul(A.mul(ea, Vec(val[so].rows()[j])), eb);
            auto c = val[dd].coords(img);
            if (!c) throw std::logic_error("bimodule action left the hom component");
            for (uint32_t i = 0; i < dims[dd]; ++i) mat.set(i, j, (*c)[i]);
        }
        act.push_back(std::move(mat));
    }
    return FunctorModule(std::move(envelope), F, std::move(dims), std::move(act));
}

std::optional<std::vector<DenseMat>> find_isomorphism(const FunctorModule& M, const FunctorModule& N) {
    if (M.dims() != N.dims()) return std::nullopt;
    auto basis = hom_space(M, N);
    if (basis.empty()) return M.total_dim() == 0 ? std::make_optional(std::vector<DenseMat>{}) : std::nullopt;
    const cat::FiniteCategory& C = M.category();
    PrimeField F = M.field();
    auto invertible = [&](const std::vector<DenseMat>& phi) {
        for (uint32_t x = 0; x < C.objects(); ++x)
            if (fp::rank(phi[x]) != M.dim(x)) return false;
        return true;
    };
    auto combine = [&](const Vec& coeffs) {
        std::vector<DenseMat> phi;
        for (uint32_t x = 0; x < C.objects(); ++x) {
            DenseMat m(N.dim(x), M.dim(x), F.p());
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (coeffs[b]) m = m.add(basis[b][x].scaled(coeffs[b]));
            phi.push_back(std::move(m));
        }
        return phi;
    };
    // Deterministic sweep: single basis elements, then pairs, then a fixed
    // seeded sampler.
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Vec c(basis.size(), 0);
        c[b] = 1;
        auto phi = combine(c);
        if (invertible(phi)) return phi;
    }
    for (std::size_t b1 = 0; b1 < basis.size(); ++b1)
        for (std::size_t b2 = b1 + 1; b2 < basis.size(); ++b2) {
            Vec c(basis.size(), 0);
            c[b1] = 1;
            c[b2] = 1;
            auto phi = combine(c);
            if (invertible(phi)) return phi;
        }
    Rng rng(kSeed);
    for (int t = 0; t < 500; ++t) {
        Vec c(basis.size());
        for (auto& v : c) v = static_cast<uint32_t>(rng.next() % F.p());
        auto phi = combine(c);
        if (invertible(phi)) return phi;
    }
    return std::nullopt;
}

}  // namespace strata::rep
