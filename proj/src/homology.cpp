#include "strata/homology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace strata::hml {

namespace {

Vec zvec(std::size_t n) { return Vec(n, 0); }

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

void axpy_into(Vec& y, const Vec& x, uint32_t c, uint32_t p) {
    fp::active_kernels().axpy(y.data(), x.data(), c, y.size(), p);
}

}  // namespace

std::vector<uint32_t> Resolution::ranks() const {
    std::vector<uint32_t> r;
    for (const auto& s : summands) r.push_back(static_cast<uint32_t>(s.size()));
    return r;
}

std::vector<uint32_t> ExtTable::dims() const {
    std::vector<uint32_t> d;
    for (const auto& deg : degrees) d.push_back(deg.ext_dim);
    return d;
}

std::pair<grp::FiniteGroup, std::vector<uint32_t>> aut_group(const cat::FiniteCategory& C, uint32_t x) {
    std::vector<uint32_t> elems = C.hom(x, x);
    const uint32_t n = static_cast<uint32_t>(elems.size());
    std::map<uint32_t, uint32_t> where;
    for (uint32_t i = 0; i < n; ++i) where[elems[i]] = i;
    std::vector<std::vector<uint32_t>> table(n, std::vector<uint32_t>(n));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            int32_t c = C.compose(elems[i], elems[j]);
            if (c == cat::FiniteCategory::undefined) throw std::logic_error("Aut set not closed");
            table[i][j] = where.at(static_cast<uint32_t>(c));
        }
    return {grp::FiniteGroup::from_table(table), elems};
}

HomologyEngine::HomologyEngine(alg::CategoryAlgebra A) : A_(std::move(A)) {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    auto rad = alg::radical_ei(A_);
    radical_ = std::move(rad.basis);
    classes_ = C.iso_classes();

    // Simples: one per (class, vertex Wedderburn block), with a primitive
    // idempotent representative embedded into kC.
    for (uint32_t cls = 0; cls < classes_.size(); ++cls) {
        const uint32_t x = classes_[cls][0];
        auto aut = A_.aut_algebra(x);
        std::vector<Vec> jx = alg::radical_small(aut.alg);
        std::vector<Vec> family = alg::primitive_idempotents(aut.alg, jx);
        // Group family members by the Wedderburn block of kAut(x)/J they
        // cover; keep the first per block.
        std::vector<alg::SimpleAlgebraModule> vertex_simples = alg::simple_modules(aut.alg, jx);
        std::vector<int> block_of(family.size(), -1);
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
            // f acts nonzero on exactly one vertex simple.
            for (std::size_t si = 0; si < vertex_simples.size(); ++si) {
                DenseMat action(vertex_simples[si].dim, vertex_simples[si].dim, F.p());
                for (uint32_t b = 0; b < aut.alg.dim; ++b)
                    if (family[fi][b]) action = action.add(vertex_simples[si].action[b].scaled(family[fi][b]));
                if (!action.is_zero()) {
                    if (block_of[fi] != -1) throw VerificationError("primitive idempotent meets two simples");
                    block_of[fi] = static_cast<int>(si);
                }
            }
            if (block_of[fi] == -1) throw VerificationError("primitive idempotent kills every simple");
        }
        for (std::size_t si = 0; si < vertex_simples.size(); ++si) {
            int pick = -1;
            for (std::size_t fi = 0; fi < family.size(); ++fi)
                if (block_of[fi] == static_cast<int>(si)) {
                    pick = static_cast<int>(fi);
                    break;
                }
            if (pick < 0) throw VerificationError("vertex simple without a primitive idempotent");
            SimpleInfo info;
            info.cls = cls;
            info.base_object = x;
            info.vertex = static_cast<uint32_t>(si);
            info.idempotent = A_.embed(aut, family[static_cast<std::size_t>(pick)]);
            simples_.push_back(std::move(info));

            // Spread the vertex simple across the class via transversal
            // isomorphisms (smallest morphism id per object).
            const auto& S = vertex_simples[si];
            std::vector<uint32_t> transversal(C.objects(), cat::FiniteCategory::undefined);
            for (uint32_t y : classes_[cls]) {
                for (uint32_t f : C.hom(x, y))
                    if (C.is_iso(f)) {
                        transversal[y] = f;
                        break;
                    }
                if (transversal[y] == static_cast<uint32_t>(cat::FiniteCategory::undefined))
                    throw std::logic_error("class member without an isomorphism");
            }
            std::vector<uint32_t> dims(C.objects(), 0);
            for (uint32_t y : classes_[cls]) dims[y] = S.dim;
            std::map<uint32_t, uint32_t> aut_index;
            for (uint32_t i = 0; i < aut.morphisms.size(); ++i) aut_index[aut.morphisms[i]] = i;
            std::vector<DenseMat> act;
            for (uint32_t m = 0; m < C.morphisms(); ++m) {
                const uint32_t sy = C.src(m), dy = C.dst(m);
                if (dims[sy] && dims[dy] && C.is_iso(m)) {
                    // sigma_dst^(-1) m sigma_src is an automorphism of x.
                    int32_t t1 = C.compose(m, transversal[sy]);
                    int32_t inv = C.inverse(transversal[dy]);
                    if (t1 < 0 || inv < 0) throw std::logic_error("transversal composition failed");
                    int32_t a = C.compose(static_cast<uint32_t>(inv), static_cast<uint32_t>(t1));
                    if (a < 0) throw std::logic_error("transversal composition failed");
                    act.push_back(S.action[aut_index.at(static_cast<uint32_t>(a))]);
                } else {
                    act.push_back(DenseMat(dims[dy], dims[sy], F.p()));
                }
            }
            simple_modules_.emplace_back(A_.category_ptr(), F, std::move(dims), std::move(act));
        }
    }

    // Projective prototypes P(S) = kC * f.
    for (const SimpleInfo& s : simples_) {
        const uint32_t x = s.base_object;
        std::vector<std::vector<Vec>> basis_alg(C.objects());
        std::vector<fp::RowBasis> bases;
        for (uint32_t y = 0; y < C.objects(); ++y) {
            fp::RowBasis rb(A_.dim(), F.p());
            for (uint32_t g : C.hom(x, y)) {
                Vec eg = zvec(A_.dim());
                eg[g] = 1;
                rb.add(A_.mul(eg, s.idempotent));
            }
            basis_alg[y].assign(rb.rows().begin(), rb.rows().end());
            bases.push_back(std::move(rb));
        }
        std::vector<uint32_t> dims(C.objects());
        for (uint32_t y = 0; y < C.objects(); ++y) dims[y] = static_cast<uint32_t>(basis_alg[y].size());
        std::vector<DenseMat> act;
        for (uint32_t m = 0; m < C.morphisms(); ++m) {
            const uint32_t sy = C.src(m), dy = C.dst(m);
            DenseMat mat(dims[dy], dims[sy], F.p());
            Vec em = zvec(A_.dim());
            em[m] = 1;
            for (uint32_t k = 0; k < dims[sy]; ++k) {
                Vec img = A_.mul(em, basis_alg[sy][k]);
                auto c = bases[dy].coords(img);
                if (!c) throw std::logic_error("projective prototype is not closed under the action");
                for (uint32_t i = 0; i < dims[dy]; ++i) mat.set(i, k, (*c)[i]);
            }
            act.push_back(std::move(mat));
        }
        protos_.emplace_back(A_.category_ptr(), F, std::move(dims), std::move(act));
        proto_basis_alg_.push_back(std::move(basis_alg));
    }
}

Vec HomologyEngine::level_mor_apply(const Resolution& R, uint32_t level, uint32_t m, const Vec& v) const {
    const auto& summands = R.summands[level];
    Vec out = zvec(v.size());
    uint32_t off = 0;
    for (uint32_t j = 0; j < summands.size(); ++j) {
        const rep::FunctorModule& P = protos_[summands[j]];
        Vec slice(v.begin() + off, v.begin() + off + P.total_dim());
        if (!is_zero(slice)) {
            Vec img = P.mor_apply(m, slice);
            for (uint32_t i = 0; i < P.total_dim(); ++i) out[off + i] = img[i];
        }
        off += P.total_dim();
    }
    return out;
}

Vec HomologyEngine::level_alg_apply(const Resolution& R, uint32_t level, const Vec& a, const Vec& v) const {
    Vec out = zvec(v.size());
    for (uint32_t m = 0; m < a.size(); ++m) {
        if (!a[m]) continue;
        Vec term = level_mor_apply(R, level, m, v);
        axpy_into(out, term, a[m], A_.field().p());
    }
    return out;
}

namespace {

/// Object-block index sets of a structural level: global indices grouped by
/// object (summand-major inside each object).
std::vector<std::vector<uint32_t>> level_object_slices(const std::vector<rep::FunctorModule>& protos,
                                                       const std::vector<uint32_t>& summands,
                                                       uint32_t n_objects) {
    std::vector<std::vector<uint32_t>> slices(n_objects);
    uint32_t off = 0;
    for (uint32_t j = 0; j < summands.size(); ++j) {
        const rep::FunctorModule& P = protos[summands[j]];
        for (uint32_t y = 0; y < n_objects; ++y)
            for (uint32_t k = 0; k < P.dim(y); ++k) slices[y].push_back(off + P.offset(y) + k);
        off += P.total_dim();
    }
    return slices;
}

std::vector<std::vector<uint32_t>> module_object_slices(const rep::FunctorModule& M) {
    std::vector<std::vector<uint32_t>> slices(M.category().objects());
    for (uint32_t y = 0; y < M.category().objects(); ++y)
        for (uint32_t k = 0; k < M.dim(y); ++k) slices[y].push_back(M.offset(y) + k);
    return slices;
}

}  // namespace

Vec HomologyEngine::eval_boundary(const Resolution& R, const rep::FunctorModule& M, uint32_t t,
                                  const Vec& v) const {
    // Image of a level-t vector under the differential (t = 0: augmentation
    // into M).
    const auto& summands = R.summands[t];
    const uint32_t prev_width = t == 0 ? M.total_dim() : R.total_dims[t - 1];
    Vec out = zvec(prev_width);
    uint32_t off = 0;
    for (uint32_t j = 0; j < summands.size(); ++j) {
        const rep::FunctorModule& P = protos_[summands[j]];
        const auto& balg = proto_basis_alg_[summands[j]];
        const Vec& w = R.gen_images[t][j];
        for (uint32_t y = 0; y < P.category().objects(); ++y)
            for (uint32_t k = 0; k < P.dim(y); ++k) {
                uint32_t coeff = v[off + P.offset(y) + k];
                if (!coeff) continue;
                Vec term = t == 0 ? M.alg_apply(balg[y][k], w) : level_alg_apply(R, t - 1, balg[y][k], w);
                axpy_into(out, term, coeff, A_.field().p());
            }
        off += P.total_dim();
    }
    return out;
}

Resolution HomologyEngine::resolve(const rep::FunctorModule& M, uint32_t max_degree) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    const uint32_t p = F.p();
    Resolution R;
    if (M.total_dim() == 0) {
        R.terminated = true;
        return R;
    }

    // The cover machinery: target rows are single-object-supported vectors
    // in an ambient space (M for level 0, a level for deeper ones).
    struct Ambient {
        uint32_t width;
        std::function<Vec(const Vec&, const Vec&)> alg_apply;        // (algebra elt, vec)
        std::function<Vec(uint32_t, const Vec&)> mor_apply;          // (morphism, vec)
        const std::vector<std::vector<uint32_t>>* slices;            // object -> global indices
    };

    auto cover = [&](const Ambient& amb, const std::vector<std::vector<Vec>>& target_rows)
        -> std::pair<std::vector<uint32_t>, std::vector<Vec>> {
        const uint32_t nob = C.objects();
        std::vector<fp::RowBasis> target_span;
        for (uint32_t y = 0; y < nob; ++y) {
            fp::RowBasis rb(amb.width, p);
            for (const Vec& v : target_rows[y]) rb.add(v);
            target_span.push_back(std::move(rb));
        }
        std::vector<fp::RowBasis> U(nob, fp::RowBasis(amb.width, p));
        std::vector<std::pair<uint32_t, Vec>> queue;
        auto add_vec = [&](uint32_t y, const Vec& v) {
            if (U[y].add(v)) queue.push_back({y, v});
        };
        auto split_add = [&](const Vec& v) {
            for (uint32_t y = 0; y < nob; ++y) {
                Vec comp = zvec(amb.width);
                bool nz = false;
                for (uint32_t idx : (*amb.slices)[y]) {
                    comp[idx] = v[idx];
                    nz |= v[idx] != 0;
                }
                if (nz) add_vec(y, comp);
            }
        };
        // Seed with J * target.
        for (const Vec& j : radical_)
            for (uint32_t y = 0; y < nob; ++y)
                for (const Vec& v : target_rows[y]) split_add(amb.alg_apply(j, v));
        auto close = [&]() {
            while (!queue.empty()) {
                auto [y, v] = queue.back();
                queue.pop_back();
                for (uint32_t m = 0; m < C.morphisms(); ++m) {
                    if (C.src(m) != y) continue;
                    Vec w = amb.mor_apply(m, v);
                    if (!is_zero(w)) add_vec(C.dst(m), w);
                }
            }
        };
        close();

        std::vector<uint32_t> picked;
        std::vector<Vec> gens;
        for (uint32_t s = 0; s < simples_.size(); ++s) {
            const uint32_t x = simples_[s].base_object;
            bool progress = true;
            while (progress) {
                progress = false;
                for (const Vec& v : target_rows[x]) {
                    Vec w = amb.alg_apply(simples_[s].idempotent, v);
                    if (is_zero(w) || U[x].contains(w)) continue;
                    picked.push_back(s);
                    gens.push_back(w);
                    add_vec(x, w);
                    close();
                    progress = true;
                    break;
                }
            }
        }
        for (uint32_t y = 0; y < nob; ++y)
            if (U[y].rank() < target_span[y].rank())
                throw VerificationError("projective cover failed to reach the target");
        return {std::move(picked), std::move(gens)};
    };

    // Level 0: cover of M itself.
    auto mslices = module_object_slices(M);
    {
        Ambient amb{M.total_dim(), [&](const Vec& a, const Vec& v) { return M.alg_apply(a, v); },
                    [&](uint32_t m, const Vec& v) { return M.mor_apply(m, v); }, &mslices};
        std::vector<std::vector<Vec>> rows(C.objects());
        for (uint32_t y = 0; y < C.objects(); ++y)
            for (uint32_t k = 0; k < M.dim(y); ++k) {
                Vec e = zvec(M.total_dim());
                e[M.offset(y) + k] = 1;
                rows[y].push_back(std::move(e));
            }
        auto [picked, gens] = cover(amb, rows);
        R.summands.push_back(picked);
        R.gen_images.push_back(gens);
        uint32_t total = 0;
        for (uint32_t sidx : picked) total += protos_[sidx].total_dim();
        R.total_dims.push_back(total);
    }

    for (uint32_t t = 0; R.summands.size() <= max_degree; ++t) {
        // Kernel of the level-t differential, object by object.
        const auto& summands = R.summands[t];
        auto slices = level_object_slices(protos_, summands, C.objects());
        const uint32_t prev_width = t == 0 ? M.total_dim() : R.total_dims[t - 1];
        const auto& prev_slices_store = t == 0 ? mslices : level_object_slices(protos_, R.summands[t - 1], C.objects());

        std::vector<std::vector<Vec>> kernel_rows(C.objects());
        bool any = false;
        for (uint32_t y = 0; y < C.objects(); ++y) {
            const auto& cols = slices[y];
            const auto& prows = prev_slices_store[y];
            DenseMat dmat(static_cast<uint32_t>(prows.size()), static_cast<uint32_t>(cols.size()), p);
            for (uint32_t c = 0; c < cols.size(); ++c) {
                Vec e = zvec(R.total_dims[t]);
                e[cols[c]] = 1;
                Vec img = eval_boundary(R, M, t, e);
                if (img.size() != prev_width) throw std::logic_error("boundary width mismatch");
                for (uint32_t r = 0; r < prows.size(); ++r) dmat.set(r, c, img[prows[r]]);
            }
            for (const Vec& k : fp::kernel_basis(dmat)) {
                Vec full = zvec(R.total_dims[t]);
                for (uint32_t c = 0; c < cols.size(); ++c) full[cols[c]] = k[c];
                kernel_rows[y].push_back(std::move(full));
                any = true;
            }
        }
        if (!any) {
            R.terminated = true;
            break;
        }
        if (R.summands.size() > max_degree) break;

        Ambient amb{R.total_dims[t], [&, t](const Vec& a, const Vec& v) { return level_alg_apply(R, t, a, v); },
                    [&, t](uint32_t m, const Vec& v) { return level_mor_apply(R, t, m, v); }, &slices};
        auto [picked, gens] = cover(amb, kernel_rows);
        if (picked.empty()) {
            R.terminated = true;
            break;
        }
        R.summands.push_back(picked);
        R.gen_images.push_back(gens);
        uint32_t total = 0;
        for (uint32_t sidx : picked) total += protos_[sidx].total_dim();
        R.total_dims.push_back(total);
    }
    return R;
}

rep::FunctorModule HomologyEngine::level_module(const Resolution& R, uint32_t t) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    const auto& summands = R.summands[t];
    std::vector<uint32_t> dims(C.objects(), 0);
    for (uint32_t sidx : summands)
        for (uint32_t y = 0; y < C.objects(); ++y) dims[y] += protos_[sidx].dim(y);
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        const uint32_t sy = C.src(m), dy = C.dst(m);
        DenseMat mat(dims[dy], dims[sy], F.p());
        uint32_t roff = 0, coff = 0;
        for (uint32_t sidx : summands) {
            const DenseMat& a = protos_[sidx].action(m);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) mat.set(roff + i, coff + j, a.at(i, j));
            roff += protos_[sidx].dim(dy);
            coff += protos_[sidx].dim(sy);
        }
        act.push_back(std::move(mat));
    }
    return rep::FunctorModule(A_.category_ptr(), F, std::move(dims), std::move(act));
}

std::vector<DenseMat> HomologyEngine::level_differential(const Resolution& R, uint32_t t,
                                                         const rep::FunctorModule& M) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    auto slices = level_object_slices(protos_, R.summands[t], C.objects());
    const auto prev_slices = t == 0 ? module_object_slices(M) : level_object_slices(protos_, R.summands[t - 1], C.objects());
    std::vector<DenseMat> out;
    for (uint32_t y = 0; y < C.objects(); ++y) {
        DenseMat mat(static_cast<uint32_t>(prev_slices[y].size()), static_cast<uint32_t>(slices[y].size()), F.p());
        for (uint32_t c = 0; c < slices[y].size(); ++c) {
            Vec e = zvec(R.total_dims[t]);
            e[slices[y][c]] = 1;
            Vec img = eval_boundary(R, M, t, e);
            for (uint32_t r = 0; r < prev_slices[y].size(); ++r) mat.set(r, c, img[prev_slices[y][r]]);
        }
        out.push_back(std::move(mat));
    }
    return out;
}

rep::FunctorModule HomologyEngine::syzygy(const Resolution& R, const rep::FunctorModule& M, uint32_t n) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    if (n == 0) throw std::invalid_argument("syzygy index must be at least 1");
    if (n - 1 >= R.summands.size()) {
        if (R.terminated) return rep::FunctorModule::zero(A_.category_ptr(), F);
        throw std::invalid_argument("resolution not computed deep enough for this syzygy");
    }
    const uint32_t t = n - 1;
    auto slices = level_object_slices(protos_, R.summands[t], C.objects());
    // Per-object kernel bases of the level-t differential.
    std::vector<DenseMat> diff = level_differential(R, t, M);
    std::vector<std::vector<Vec>> kernels(C.objects());
    std::vector<fp::RowBasis> kernel_span;
    std::vector<uint32_t> dims(C.objects(), 0);
    for (uint32_t y = 0; y < C.objects(); ++y) {
        fp::RowBasis rb(R.total_dims[t], F.p());
        for (const Vec& k : fp::kernel_basis(diff[y])) {
            Vec full = zvec(R.total_dims[t]);
            for (uint32_t c = 0; c < slices[y].size(); ++c) full[slices[y][c]] = k[c];
            rb.add(full);
            kernels[y].push_back(std::move(full));
        }
        dims[y] = static_cast<uint32_t>(rb.rank());
        kernels[y].assign(rb.rows().begin(), rb.rows().end());
        kernel_span.push_back(std::move(rb));
    }
    std::vector<DenseMat> act;
    for (uint32_t m = 0; m < C.morphisms(); ++m) {
        const uint32_t sy = C.src(m), dy = C.dst(m);
        DenseMat mat(dims[dy], dims[sy], F.p());
        for (uint32_t j = 0; j < dims[sy]; ++j) {
            Vec img = level_mor_apply(R, t, m, kernels[sy][j]);
            auto c = kernel_span[dy].coords(img);
            if (!c) throw std::logic_error("syzygy is not invariant");
            for (uint32_t i = 0; i < dims[dy]; ++i) mat.set(i, j, (*c)[i]);
        }
        act.push_back(std::move(mat));
    }
    return rep::FunctorModule(A_.category_ptr(), F, std::move(dims), std::move(act));
}

HomologyEngine::FNBasis HomologyEngine::fn_basis(const Resolution& R, const rep::FunctorModule& N,
                                                 uint32_t level) const {
    FNBasis out;
    if (level >= R.summands.size()) return out;
    const PrimeField& F = A_.field();
    for (uint32_t sidx : R.summands[level]) {
        fp::RowBasis rb(N.total_dim(), F.p());
        for (uint32_t t = 0; t < N.total_dim(); ++t) {
            Vec e = zvec(N.total_dim());
            e[t] = 1;
            rb.add(N.alg_apply(simples_[sidx].idempotent, e));
        }
        out.offsets.push_back(out.total);
        out.total += static_cast<uint32_t>(rb.rank());
        out.per_summand.push_back(std::move(rb));
    }
    return out;
}

uint32_t HomologyEngine::cochain_dim(const Resolution& R, const rep::FunctorModule& N, uint32_t level) const {
    return fn_basis(R, N, level).total;
}

Vec HomologyEngine::evaluate_cochain(const Resolution& R, const rep::FunctorModule& N, uint32_t level,
                                     const Vec& phi, const Vec& v) const {
    FNBasis fb = fn_basis(R, N, level);
    const PrimeField& F = A_.field();
    // Generator values.
    std::vector<Vec> values;
    for (std::size_t j = 0; j < fb.per_summand.size(); ++j) {
        Vec n = zvec(N.total_dim());
        for (uint32_t b = 0; b < fb.per_summand[j].rank(); ++b)
            if (phi[fb.offsets[j] + b]) axpy_into(n, fb.per_summand[j].rows()[b], phi[fb.offsets[j] + b], F.p());
        values.push_back(std::move(n));
    }
    Vec out = zvec(N.total_dim());
    uint32_t off = 0;
    const auto& summands = R.summands[level];
    for (uint32_t j = 0; j < summands.size(); ++j) {
        const rep::FunctorModule& P = protos_[summands[j]];
        const auto& balg = proto_basis_alg_[summands[j]];
        if (!is_zero(values[j])) {
            for (uint32_t y = 0; y < P.category().objects(); ++y)
                for (uint32_t k = 0; k < P.dim(y); ++k) {
                    uint32_t coeff = v[off + P.offset(y) + k];
                    if (!coeff) continue;
                    Vec term = N.alg_apply(balg[y][k], values[j]);
                    axpy_into(out, term, coeff, F.p());
                }
        }
        off += P.total_dim();
    }
    return out;
}

DenseMat HomologyEngine::cochain_differential(const Resolution& R, const rep::FunctorModule& M,
                                              const rep::FunctorModule& N, uint32_t level) const {
    (void)M;
    FNBasis flo = fn_basis(R, N, level);
    FNBasis fhi = fn_basis(R, N, level + 1);
    const PrimeField& F = A_.field();
    DenseMat d(fhi.total, flo.total, F.p());
    if (level + 1 >= R.summands.size()) return d;
    for (uint32_t col = 0; col < flo.total; ++col) {
        Vec phi = zvec(flo.total);
        phi[col] = 1;
        // Values on the generators of level+1.
        uint32_t row_off = 0;
        for (std::size_t j = 0; j < R.summands[level + 1].size(); ++j) {
            Vec val = evaluate_cochain(R, N, level, phi, R.gen_images[level + 1][j]);
            auto c = fhi.per_summand[j].coords(val);
            if (!c) throw VerificationError("cochain differential left the idempotent corner");
            for (uint32_t i = 0; i < fhi.per_summand[j].rank(); ++i) d.set(row_off + i, col, (*c)[i]);
            row_off += fhi.per_summand[j].rank();
        }
    }
    return d;
}

ExtTable HomologyEngine::ext(const Resolution& RM, const rep::FunctorModule& M, const rep::FunctorModule& N,
                             uint32_t max_degree) const {
    if (!RM.terminated && RM.summands.size() <= max_degree)
        throw std::invalid_argument("resolution must be computed one degree beyond the Ext truncation");
    const PrimeField& F = A_.field();
    ExtTable T;
    fp::RowBasis prev_image(0, F.p());
    DenseMat dprev(0, 0, F.p());
    for (uint32_t i = 0; i <= max_degree; ++i) {
        ExtDegree deg;
        if (i < RM.summands.size()) {
            FNBasis fb = fn_basis(RM, N, i);
            deg.cochain_dim = fb.total;
            DenseMat d = cochain_differential(RM, M, N, i);
            // Coboundaries: image of the previous differential.
            deg.coboundaries = fp::RowBasis(fb.total, F.p());
            if (i > 0) {
                for (uint32_t col = 0; col < dprev.cols(); ++col) {
                    Vec img(dprev.rows());
                    for (uint32_t r = 0; r < dprev.rows(); ++r) img[r] = dprev.at(r, col);
                    deg.coboundaries.add(std::move(img));
                }
            }
            deg.class_span = fp::RowBasis(fb.total, F.p());
            for (const Vec& z : fp::kernel_basis(d)) {
                Vec red = deg.coboundaries.reduce(z);
                deg.class_span.add(red);
            }
            deg.ext_dim = static_cast<uint32_t>(deg.class_span.rank());
            deg.class_reps.assign(deg.class_span.rows().begin(), deg.class_span.rows().end());
            dprev = std::move(d);
        } else {
            deg.cochain_dim = 0;
            deg.ext_dim = 0;
            dprev = DenseMat(0, 0, F.p());
        }
        T.degrees.push_back(std::move(deg));
    }
    // Degree-0 certificate: Ext^0(M, N) = Hom(M, N).
    if (M.total_dim() && T.degrees[0].ext_dim != rep::hom_space(M, N).size())
        throw VerificationError("Ext^0 does not match the intertwiner space");
    return T;
}

Vec HomologyEngine::class_coords(const ExtTable& T, uint32_t degree, const Vec& cochain) const {
    const ExtDegree& deg = T.degrees[degree];
    Vec red = deg.coboundaries.reduce(cochain);
    auto c = deg.class_span.coords(red);
    if (!c) throw VerificationError("cochain does not represent a class in the table");
    return *c;
}

ChainMap HomologyEngine::lift(const Resolution& RM, const rep::FunctorModule& M, const Resolution& RN,
                              const rep::FunctorModule& N, const Vec& phi, uint32_t s, uint32_t t_max) const {
    (void)M;
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    ChainMap cm;
    cm.shift = s;
    FNBasis fb = fn_basis(RM, N, s);
    // Evaluate the chain map built so far on an arbitrary source vector.
    auto eval_cm = [&](uint32_t t, const Vec& v) {
        const auto& summands = RM.summands[s + t];
        const uint32_t out_w = RN.total_dims[t];
        Vec out = zvec(out_w);
        uint32_t off = 0;
        for (uint32_t j = 0; j < summands.size(); ++j) {
            const rep::FunctorModule& P = protos_[summands[j]];
            const auto& balg = proto_basis_alg_[summands[j]];
            for (uint32_t y = 0; y < C.objects(); ++y)
                for (uint32_t k = 0; k < P.dim(y); ++k) {
                    uint32_t coeff = v[off + P.offset(y) + k];
                    if (!coeff) continue;
                    Vec term = level_alg_apply(RN, t, balg[y][k], cm.gen_images[t][j]);
                    axpy_into(out, term, coeff, F.p());
                }
            off += P.total_dim();
        }
        return out;
    };

    for (uint32_t t = 0; t <= t_max; ++t) {
        if (s + t >= RM.summands.size()) break;
        if (t >= RN.summands.size()) throw std::invalid_argument("target resolution too short for the lift");
        std::vector<Vec> images;
        auto slices = level_object_slices(protos_, RN.summands[t], C.objects());
        std::vector<DenseMat> diff = level_differential(RN, t, N);
        auto prev_slices = t == 0 ? module_object_slices(N) : level_object_slices(protos_, RN.summands[t - 1], C.objects());
        for (std::size_t j = 0; j < RM.summands[s + t].size(); ++j) {
            const uint32_t x = simples_[RM.summands[s + t][j]].base_object;
            Vec rhs_full;
            if (t == 0) {
                rhs_full = zvec(N.total_dim());
                for (uint32_t b = 0; b < fb.per_summand[j].rank(); ++b)
                    if (phi[fb.offsets[j] + b]) axpy_into(rhs_full, fb.per_summand[j].rows()[b], phi[fb.offsets[j] + b], F.p());
            } else {
                rhs_full = eval_cm(t - 1, RM.gen_images[s + t][j]);
            }
            // Solve the object-x block system, then project to the corner.
            Vec rhs_block(prev_slices[x].size());
            for (uint32_t r = 0; r < prev_slices[x].size(); ++r) rhs_block[r] = rhs_full[prev_slices[x][r]];
            auto sol = fp::solve(diff[x], rhs_block);
            if (!sol) throw VerificationError("chain map lift hit an unsolvable step");
            Vec u = zvec(RN.total_dims[t]);
            for (uint32_t c = 0; c < slices[x].size(); ++c) u[slices[x][c]] = (*sol)[c];
            u = level_alg_apply(RN, t, simples_[RM.summands[s + t][j]].idempotent, u);
            images.push_back(std::move(u));
        }
        cm.gen_images.push_back(std::move(images));
    }
    return cm;
}

Vec HomologyEngine::yoneda(const Resolution& RM, const rep::FunctorModule& M, const Resolution& RN,
                           const rep::FunctorModule& N, const rep::FunctorModule& L, const Vec& phi, uint32_t i,
                           const Vec& psi, uint32_t s) const {
    ChainMap cm = lift(RM, M, RN, N, phi, i, s);
    FNBasis fout = fn_basis(RM, L, i + s);
    const PrimeField& F = A_.field();
    Vec out = zvec(fout.total);
    if (i + s >= RM.summands.size()) return out;  // cochain space is zero there
    uint32_t off = 0;
    for (std::size_t j = 0; j < RM.summands[i + s].size(); ++j) {
        Vec value = evaluate_cochain(RN, L, s, psi, cm.gen_images[s][j]);
        auto c = fout.per_summand[j].coords(value);
        if (!c) throw VerificationError("Yoneda product left the idempotent corner");
        for (uint32_t b = 0; b < fout.per_summand[j].rank(); ++b) out[off + b] = (*c)[b];
        off += fout.per_summand[j].rank();
    }
    return out;
}

std::vector<std::vector<Vec>> HomologyEngine::compare_with_complex(const Resolution& RS,
                                                                   const rep::FunctorModule& MS,
                                                                   const ExplicitComplex& cx,
                                                                   uint32_t t_max) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    std::vector<std::vector<Vec>> out;
    auto eval_on = [&](uint32_t t, const Vec& v) {
        // Evaluate the comparison map at level t on a source level vector.
        const auto& summands = RS.summands[t];
        Vec res = zvec(cx.levels[t].total_dim());
        uint32_t off = 0;
        for (uint32_t j = 0; j < summands.size(); ++j) {
            const rep::FunctorModule& P = protos_[summands[j]];
            const auto& balg = proto_basis_alg_[summands[j]];
            for (uint32_t y = 0; y < C.objects(); ++y)
                for (uint32_t k = 0; k < P.dim(y); ++k) {
                    uint32_t coeff = v[off + P.offset(y) + k];
                    if (!coeff) continue;
                    Vec term = cx.levels[t].alg_apply(balg[y][k], out[t][j]);
                    axpy_into(res, term, coeff, F.p());
                }
            off += P.total_dim();
        }
        return res;
    };
    for (uint32_t t = 0; t <= t_max && t < RS.summands.size(); ++t) {
        if (t >= cx.levels.size()) throw std::invalid_argument("explicit complex too short for comparison");
        std::vector<Vec> images;
        const rep::FunctorModule& Tt = cx.levels[t];
        for (std::size_t j = 0; j < RS.summands[t].size(); ++j) {
            const uint32_t x = simples_[RS.summands[t][j]].base_object;
            Vec rhs_full = t == 0 ? RS.gen_images[0][j] : eval_on(t - 1, RS.gen_images[t][j]);
            const rep::FunctorModule& prev = t == 0 ? MS : cx.levels[t - 1];
            Vec rhs_block(prev.dim(x));
            for (uint32_t r = 0; r < prev.dim(x); ++r) rhs_block[r] = rhs_full[prev.offset(x) + r];
            auto sol = fp::solve(cx.diff[t][x], rhs_block);
            if (!sol) throw VerificationError("comparison lift hit an unsolvable step");
            Vec u = zvec(Tt.total_dim());
            for (uint32_t c = 0; c < Tt.dim(x); ++c) u[Tt.offset(x) + c] = (*sol)[c];
            u = Tt.alg_apply(simples_[RS.summands[t][j]].idempotent, u);
            images.push_back(std::move(u));
        }
        out.push_back(std::move(images));
    }
    return out;
}

Vec HomologyEngine::tensor_image(const Resolution& Rk, const rep::FunctorModule& ktriv, const Vec& zeta,
                                 uint32_t deg, const Resolution& RM, const rep::FunctorModule& M) const {
    const cat::FiniteCategory& C = A_.category();
    const PrimeField& F = A_.field();
    if (deg >= Rk.summands.size()) {
        // The class lives above the (terminated) resolution: zero image.
        return zvec(cochain_dim(RM, M, deg));
    }
    // Explicit complex T_t = Q_t (x) M with differentials d (x) id.
    ExplicitComplex cx;
    std::vector<rep::FunctorModule> qlevels;
    for (uint32_t t = 0; t <= deg; ++t) {
        qlevels.push_back(level_module(Rk, t));
        cx.levels.push_back(rep::tensor_hat(qlevels.back(), M));
        std::vector<DenseMat> qd = level_differential(Rk, t, ktriv);
        std::vector<DenseMat> td;
        for (uint32_t y = 0; y < C.objects(); ++y) td.push_back(qd[y].kron(DenseMat::identity(M.dim(y), F.p())));
        cx.diff.push_back(std::move(td));
    }
    auto lambda = compare_with_complex(RM, M, cx, deg);
    if (deg >= RM.summands.size()) return zvec(cochain_dim(RM, M, deg));

    // (zeta (x) id): per object, row of zeta on Q_deg(y) basis tensored with
    // the identity of M(y).
    std::vector<DenseMat> zmat;  // per object: M(y) x (Q_deg(y)*M(y))
    {
        const rep::FunctorModule& Q = qlevels[deg];
        // zeta evaluated on module-coordinate basis vectors of Q_deg.
        auto slices = level_object_slices(protos_, Rk.summands[deg], C.objects());
        for (uint32_t y = 0; y < C.objects(); ++y) {
            Vec row(Q.dim(y));
            for (uint32_t k = 0; k < Q.dim(y); ++k) {
                Vec e = zvec(Rk.total_dims[deg]);
                e[slices[y][k]] = 1;
                Vec val = evaluate_cochain(Rk, ktriv, deg, zeta, e);  // in ktriv coordinates
                row[k] = val[ktriv.offset(y)];
            }
            DenseMat r(1, Q.dim(y), F.p());
            for (uint32_t k = 0; k < Q.dim(y); ++k) r.set(0, k, row[k]);
            zmat.push_back(r.kron(DenseMat::identity(M.dim(y), F.p())));
        }
    }
    FNBasis fout = fn_basis(RM, M, deg);
    Vec out = zvec(fout.total);
    uint32_t off = 0;
    for (std::size_t j = 0; j < RM.summands[deg].size(); ++j) {
        const Vec& lam = lambda[deg][j];  // in T_deg coordinates
        Vec value = zvec(M.total_dim());
        const rep::FunctorModule& Tdeg = cx.levels[deg];
        for (uint32_t y = 0; y < C.objects(); ++y) {
            Vec block(Tdeg.dim(y));
            for (uint32_t k = 0; k < Tdeg.dim(y); ++k) block[k] = lam[Tdeg.offset(y) + k];
            Vec img = zmat[y].apply(block);
            for (uint32_t k = 0; k < M.dim(y); ++k) value[M.offset(y) + k] = img[k];
        }
        auto c = fout.per_summand[j].coords(value);
        if (!c) throw VerificationError("tensor image left the idempotent corner");
        for (uint32_t b = 0; b < fout.per_summand[j].rank(); ++b) out[off + b] = (*c)[b];
        off += fout.per_summand[j].rank();
    }
    return out;
}

ComplexityEstimate complexity_fit(const Resolution& R, uint32_t max_degree) {
    ComplexityEstimate est;
    est.ranks = R.ranks();
    est.dims = R.total_dims;
    est.terminated = R.terminated;
    if (R.terminated) {
        est.complexity = 0;
        est.stable = true;
        est.length = R.summands.empty() ? 0 : static_cast<uint32_t>(R.summands.size()) - 1;
        return est;
    }
    const uint32_t lo = (max_degree + 1) / 2, hi = max_degree;
    auto slope = [&](uint32_t a, uint32_t b) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        uint32_t n = 0;
        for (uint32_t t = a; t <= b; ++t) {
            double x = std::log(static_cast<double>(t));
            double y = std::log(static_cast<double>(R.total_dims[t]));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        double denom = n * sxx - sx * sx;
        if (denom == 0) return 0.0;
        return (n * sxy - sx * sy) / denom;
    };
    long s_full = std::lround(slope(lo, hi));
    const uint32_t mid = (lo + hi) / 2;
    long s_a = std::lround(slope(lo, mid));
    long s_b = std::lround(slope(mid, hi));
    est.complexity = static_cast<uint32_t>(std::max(0L, 1 + s_full));
    est.stable = (s_a == s_b);
    est.length = static_cast<uint32_t>(R.summands.size()) - 1;
    return est;
}

ProjdimReport finite_projdim_test(const cat::TransporterCategory& T, const rep::FunctorModule& M,
                                  uint32_t poset_dim) {
    const cat::FiniteCategory& C = *T.cat;
    PrimeField F = M.field();
    ProjdimReport rep;
    rep.finite = true;
    for (uint32_t x = 0; x < C.objects(); ++x) {
        if (M.dim(x) == 0) continue;
        auto [Gx, mor_ids] = aut_group(C, x);
        auto gcat = std::make_shared<cat::FiniteCategory>(cat::group_as_category(Gx));
        std::vector<DenseMat> mats;
        for (uint32_t id : mor_ids) mats.push_back(M.action(id));
        rep::FunctorModule V = rep::group_module(gcat, F, mats);
        HomologyEngine E(alg::CategoryAlgebra(gcat, F));
        Resolution R = E.resolve(V, 1);
        const bool projective = R.terminated && R.summands.size() == 1;
        if (!projective) {
            rep.finite = false;
            rep.failing_objects.push_back(x);
        }
    }
    // Cross-check through the resolution over the whole category.
    HomologyEngine E(alg::CategoryAlgebra(T.cat, F));
    Resolution R = E.resolve(M, poset_dim + 1);
    rep.resolution_terminated = R.terminated;
    rep.length = R.summands.empty() ? 0 : static_cast<uint32_t>(R.summands.size()) - 1;
    const bool within = R.terminated && rep.length <= poset_dim;
    if (rep.finite != within)
        throw VerificationError("finite projective dimension test disagrees with the resolution length");
    return rep;
}

EnvelopeDims envelope_and_factorization_dims(cat::CategoryPtr C, PrimeField F, uint32_t max_degree,
                                             std::size_t ceiling, bool with_blocks) {
    EnvelopeDims out;
    // Ext over kC.
    {
        HomologyEngine E(alg::CategoryAlgebra(C, F));
        rep::FunctorModule k = rep::FunctorModule::trivial(C, F);
        Resolution R = E.resolve(k, max_degree + 1);
        out.ext_c = E.ext(R, k, k, max_degree).dims();
    }
    // Ext over kF(C).
    {
        auto FC = std::make_shared<cat::FiniteCategory>(cat::factorization_category(*C, ceiling));
        HomologyEngine E(alg::CategoryAlgebra(FC, F));
        rep::FunctorModule k = rep::FunctorModule::trivial(FC, F);
        Resolution R = E.resolve(k, max_degree + 1);
        out.ext_fc = E.ext(R, k, k, max_degree).dims();
    }
    // Hochschild: Ext over kC^e of the bimodule kC (and optionally b0).
    {
        auto CE = std::make_shared<cat::FiniteCategory>(cat::enveloping_category(*C, ceiling));
        alg::CategoryAlgebra A(C, F);
        HomologyEngine E(alg::CategoryAlgebra(CE, F));
        rep::FunctorModule kc = rep::bimodule_of_algebra(A, CE);
        Resolution R = E.resolve(kc, max_degree + 1);
        out.hochschild = E.ext(R, kc, kc, max_degree).dims();
        if (with_blocks) {
            alg::BlockDecomposition bd = alg::blocks(A);
            const Vec& e0 = bd.idempotents[bd.principal];
            rep::FunctorModule b0 = rep::bimodule_of_algebra(A, CE, &e0);
            Resolution R0 = E.resolve(b0, max_degree + 1);
            out.hochschild_b0 = E.ext(R0, b0, b0, max_degree).dims();
        }
    }
    out.factorization_matches = out.ext_fc == out.ext_c;
    out.hochschild_dominates = true;
    for (uint32_t i = 0; i <= max_degree; ++i) {
        if (out.hochschild[i] < out.ext_c[i]) out.hochschild_dominates = false;
        if (!out.hochschild_b0.empty() && out.hochschild_b0[i] < out.ext_c[i]) out.hochschild_dominates = false;
    }
    return out;
}

namespace {

/// Flattened coordinates of an intertwiner (per-object matrices).
Vec flatten_intertwiner(const std::vector<DenseMat>& phi) {
    Vec v;
    for (const DenseMat& m : phi)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

}  // namespace

RestrictionSquare restriction_on_ext(const cat::TransporterCategory& T, const rep::FunctorModule& M,
                                     const rep::FunctorModule& N, uint32_t object, uint32_t max_degree) {
    const cat::FiniteCategory& C = *T.cat;
    PrimeField F = M.field();
    RestrictionSquare sq;

    HomologyEngine E(alg::CategoryAlgebra(T.cat, F));
    Resolution RM = E.resolve(M, max_degree + 1);
    ExtTable table = E.ext(RM, M, N, max_degree);
    sq.ext_dims_full = table.dims();

    // Full subcategory on the class of `object` and the restriction data.
    std::vector<uint32_t> cls;
    for (const auto& c : C.iso_classes())
        if (std::find(c.begin(), c.end(), object) != c.end()) cls = c;
    cat::FullSubcategory sub = cat::full_subcategory(C, cls);
    auto subptr = std::make_shared<cat::FiniteCategory>(std::move(sub.cat));
    cat::Functor incl{subptr, T.cat, sub.obj_map, sub.mor_map};
    incl.validate();
    rep::FunctorModule Nr = rep::restrict_along(incl, N);

    // Truncated complex over the subcategory, with differentials.
    const uint32_t top_level = RM.summands.empty() ? 0 : static_cast<uint32_t>(RM.summands.size()) - 1;
    std::vector<rep::FunctorModule> levels_r;
    std::vector<std::vector<DenseMat>> diffs_r;  // per level t >= 1
    std::vector<rep::FunctorModule> levels_full;
    for (uint32_t t = 0; t <= top_level; ++t) {
        levels_full.push_back(E.level_module(RM, t));
        levels_r.push_back(rep::restrict_along(incl, levels_full.back()));
        std::vector<DenseMat> d = E.level_differential(RM, t, M);
        std::vector<DenseMat> dr;
        for (uint32_t y : cls) dr.push_back(d[y]);
        diffs_r.push_back(std::move(dr));
    }

    // Cochain complex Hom_k(sub)(L_t, Nr).
    std::vector<std::vector<std::vector<DenseMat>>> bases;
    for (uint32_t t = 0; t <= top_level; ++t) bases.push_back(rep::hom_space(levels_r[t], Nr));
    auto to_coords = [&](uint32_t t, const std::vector<DenseMat>& phi) -> Vec {
        // Solve against the basis.
        Vec target = flatten_intertwiner(phi);
        if (bases[t].empty()) {
            if (!is_zero(target)) throw VerificationError("intertwiner outside the empty basis");
            return {};
        }
        DenseMat sys(static_cast<uint32_t>(target.size()), static_cast<uint32_t>(bases[t].size()), F.p());
        for (uint32_t b = 0; b < bases[t].size(); ++b) {
            Vec fb = flatten_intertwiner(bases[t][b]);
            for (uint32_t i = 0; i < fb.size(); ++i) sys.set(i, b, fb[i]);
        }
        auto sol = fp::solve(sys, target);
        if (!sol) throw VerificationError("intertwiner outside the basis span");
        return *sol;
    };
    // Differential matrices on coordinates.
    std::vector<DenseMat> dmat;
    for (uint32_t t = 0; t < top_level; ++t) {
        DenseMat d(static_cast<uint32_t>(bases[t + 1].size()), static_cast<uint32_t>(bases[t].size()), F.p());
        for (uint32_t b = 0; b < bases[t].size(); ++b) {
            std::vector<DenseMat> comp;
            for (std::size_t yi = 0; yi < cls.size(); ++yi) comp.push_back(bases[t][b][yi].mul(diffs_r[t + 1][yi]));
            Vec coords = to_coords(t + 1, comp);
            for (uint32_t i = 0; i < coords.size(); ++i) d.set(i, b, coords[i]);
        }
        dmat.push_back(std::move(d));
    }
    // Ext over the subcategory (dimensions + class data).
    std::vector<fp::RowBasis> cobound;
    std::vector<fp::RowBasis> class_span;
    for (uint32_t i = 0; i <= max_degree; ++i) {
        fp::RowBasis cb(i <= top_level ? static_cast<uint32_t>(bases[i].size()) : 0, F.p());
        if (i > 0 && i <= top_level && !bases[i].empty() && i - 1 < dmat.size()) {
            const DenseMat& d = dmat[i - 1];
            for (uint32_t col = 0; col < d.cols(); ++col) {
                Vec img(d.rows());
                for (uint32_t r = 0; r < d.rows(); ++r) img[r] = d.at(r, col);
                cb.add(std::move(img));
            }
        }
        fp::RowBasis cs(cb.cols(), F.p());
        if (i <= top_level) {
            std::vector<Vec> Z;
            if (i < dmat.size()) {
                Z = fp::kernel_basis(dmat[i]);
            } else {
                // Top level: every cochain is a cocycle.
                for (uint32_t b = 0; b < bases[i].size(); ++b) {
                    Vec e(bases[i].size(), 0);
                    e[b] = 1;
                    Z.push_back(std::move(e));
                }
            }
            for (const Vec& z : Z) cs.add(cb.reduce(z));
        }
        sq.ext_dims_class.push_back(static_cast<uint32_t>(cs.rank()));
        cobound.push_back(std::move(cb));
        class_span.push_back(std::move(cs));
    }

    // Vertex group side.
    auto [Gx, aut_ids] = aut_group(C, object);
    auto gcat = std::make_shared<cat::FiniteCategory>(cat::group_as_category(Gx));
    auto as_group_module = [&](const rep::FunctorModule& W, uint32_t x) {
        std::vector<DenseMat> mats;
        for (uint32_t id : aut_ids) mats.push_back(W.action(id));
        (void)x;
        return rep::group_module(gcat, F, mats);
    };
    rep::FunctorModule Mx = as_group_module(M, object);
    rep::FunctorModule Nx = as_group_module(N, object);
    HomologyEngine Ex(alg::CategoryAlgebra(gcat, F));
    Resolution Rx = Ex.resolve(Mx, max_degree + 1);
    ExtTable tableX = Ex.ext(Rx, Mx, Nx, max_degree);
    sq.ext_dims_vertex = tableX.dims();

    // Comparison of the minimal kG_x resolution with the evaluated complex.
    ExplicitComplex cx;
    for (uint32_t t = 0; t <= top_level; ++t) {
        cx.levels.push_back(as_group_module(levels_full[t], object));
        std::vector<DenseMat> d{E.level_differential(RM, t, M)[object]};
        cx.diff.push_back(std::move(d));
    }
    const uint32_t cmp_depth = std::min(max_degree, top_level);
    auto lambda = Ex.compare_with_complex(Rx, Mx, cx, cmp_depth);

    // For each basis class over the full category, compare the two routes.
    auto vertex_class_of = [&](uint32_t degv, const std::vector<DenseMat>& phi_mats_at_x) -> Vec {
        // phi at x composed with the comparison map gives an Ex-cochain.
        if (degv >= lambda.size() || degv >= Rx.summands.size()) return {};
        std::vector<Vec> values;
        for (std::size_t j = 0; j < Rx.summands[degv].size(); ++j) {
            // lambda[degv][j] lives in cx.levels[degv] = L_degv(x).
            Vec lam = lambda[degv][j];
            values.push_back(phi_mats_at_x[0].apply(lam));
        }
        // Convert generator values to Ex cochain coordinates.
        Vec cochain;
        for (std::size_t j = 0; j < values.size(); ++j) {
            fp::RowBasis rb(Nx.total_dim(), F.p());
            for (uint32_t tt = 0; tt < Nx.total_dim(); ++tt) {
                Vec e = zvec(Nx.total_dim());
                e[tt] = 1;
                rb.add(Nx.alg_apply(Ex.simples()[Rx.summands[degv][j]].idempotent, e));
            }
            auto c = rb.coords(values[j]);
            if (!c) throw VerificationError("restricted cochain left the idempotent corner");
            for (uint32_t b = 0; b < rb.rank(); ++b) cochain.push_back((*c)[b]);
        }
        return Ex.class_coords(tableX, degv, cochain);
    };

    sq.commutes = true;
    const uint32_t xs = static_cast<uint32_t>(std::find(cls.begin(), cls.end(), object) - cls.begin());
    for (uint32_t deg = 0; deg <= max_degree && deg <= cmp_depth; ++deg) {
        for (const Vec& rep_cochain : table.degrees[deg].class_reps) {
            // Explicit per-object matrices of the representative.  The level
            // module is summand-major inside each object block, so the k-th
            // module coordinate at object y locates a structural index.
            std::vector<DenseMat> mats;
            {
                const rep::FunctorModule& L = levels_full[deg];
                for (uint32_t y = 0; y < C.objects(); ++y) {
                    DenseMat mat(N.dim(y), L.dim(y), F.p());
                    for (uint32_t k = 0; k < L.dim(y); ++k) {
                        Vec lv = zvec(RM.total_dims[deg]);
                        uint32_t off = 0, pos = 0;
                        for (uint32_t sidx : RM.summands[deg]) {
                            const rep::FunctorModule& P = E.projective(sidx);
                            for (uint32_t kk = 0; kk < P.dim(y); ++kk) {
                                if (pos == k) lv[off + P.offset(y) + kk] = 1;
                                ++pos;
                            }
                            off += P.total_dim();
                        }
                        Vec val = E.evaluate_cochain(RM, N, deg, rep_cochain, lv);
                        for (uint32_t r = 0; r < N.dim(y); ++r) mat.set(r, k, val[N.offset(y) + r]);
                    }
                    mats.push_back(std::move(mat));
                }
            }
            // Route A: restrict to the subcategory, reduce mod coboundaries,
            // then evaluate the representative at x.
            std::vector<DenseMat> mats_r;
            for (uint32_t y : cls) mats_r.push_back(mats[y]);
            Vec coordsA = to_coords(deg, mats_r);
            Vec redA = cobound[deg].reduce(coordsA);
            // Rebuild the reduced representative as matrices.
            std::vector<DenseMat> repA;
            for (std::size_t yi = 0; yi < cls.size(); ++yi) {
                DenseMat m(Nr.dim(static_cast<uint32_t>(yi)), levels_r[deg].dim(static_cast<uint32_t>(yi)), F.p());
                repA.push_back(std::move(m));
            }
            for (uint32_t b = 0; b < redA.size(); ++b)
                if (redA[b])
                    for (std::size_t yi = 0; yi < cls.size(); ++yi)
                        repA[yi] = repA[yi].add(bases[deg][b][yi].scaled(redA[b]));
            Vec classA = vertex_class_of(deg, {repA[xs]});
            // Route B: evaluate at x directly.
            Vec classB = vertex_class_of(deg, {mats[object]});
            if (classA != classB) sq.commutes = false;
        }
    }
    return sq;
}

}  // namespace strata::hml
