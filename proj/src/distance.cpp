#include "fuzzyvis/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "json.hpp"

#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/parallel.hpp"
#include "fuzzyvis/sha256.hpp"

namespace fuzzyvis {

namespace {

// Permutation-equivalent reduction of [D, rho_l(a)]: the right-action part of
// every K block commutes with left multiplication, so only sum_i omega_i (x)
// [K_i, a] survives, tensored with an identity that does not change norms.
Matrix reduced_commutator(const FiniteSpectralTriple& t, const Matrix& a) {
    const int k = t.clifford.dim();
    const int n = t.n;
    Matrix out = Matrix::Zero(k * n, k * n);
    for (const auto& term : t.k_terms) {
        if (term.K.cwiseAbs().maxCoeff() == 0.0) continue;
        Matrix comm = term.K * a - a * term.K;
        out += kron(term.omega, comm);
    }
    return out;
}

double sigma_from_eigs(const RVector& lam) {
    return std::max(lam.maxCoeff(), -lam.minCoeff());
}

struct SolveWorkspace {
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    CVector xc;           // complex copy of coefficients
    CVector gu;           // generator-vector product scratch
    Matrix gx;            // G(x)
    Matrix gdelta;        // G(delta) for line searches
    Matrix trial;
    Matrix tmp;           // generator transform scratch
    Matrix ghat;
};

void evaluate_into(const CommutatorModel& m, const RVector& x, SolveWorkspace& ws, Matrix& out) {
    ws.xc = x.cast<cxd>();
    const int r = m.reduced_dim;
    out.resize(r, r);
    Eigen::Map<CVector>(out.data(), r * r) = m.stacked * ws.xc;
}

double sigma_at(const CommutatorModel& m, const RVector& x, SolveWorkspace& ws) {
    evaluate_into(m, x, ws, ws.trial);
    ws.es.compute(ws.trial, Eigen::EigenvaluesOnly);
    return sigma_from_eigs(ws.es.eigenvalues());
}

// Subgradient of the seminorm at x: average of sign(lam_a) <e_a| G_k |e_a>
// over the eigenvalues within relative 1e-10 of the extreme magnitude. The
// averaging handles degenerate tops, which are generic for symmetric states.
RVector seminorm_subgradient(const CommutatorModel& m, const Matrix& E, const RVector& lam,
                             double sigma, SolveWorkspace& ws) {
    const int mm = m.size();
    const int r = m.reduced_dim;
    RVector g = RVector::Zero(mm);
    int hits = 0;
    for (int a = 0; a < r; ++a) {
        if (std::abs(lam[a]) < sigma * (1.0 - 1e-10)) continue;
        const double sgn = lam[a] >= 0 ? 1.0 : -1.0;
        for (int k = 0; k < mm; ++k) {
            ws.gu.noalias() = m.generators[k] * E.col(a);
            g[k] += sgn * E.col(a).dot(ws.gu).real();
        }
        ++hits;
    }
    if (hits > 0) g /= static_cast<double>(hits);
    return g;
}

struct Phase1Result {
    RVector x;
    double value = -1.0;
    int iterations = 0;
};

// Normalized subgradient ascent on w.x / sigma(x) with projection of the
// ascent direction off the seminorm subgradient and a backtracking step.
Phase1Result subgradient_phase(const CommutatorModel& m, const RVector& w,
                               const DistanceOptions& opts, SolveWorkspace& ws) {
    const int mm = m.size();
    Phase1Result best;
    best.x = w / w.norm();
    for (int rs = 0; rs < std::max(1, opts.subgradient_restarts); ++rs) {
        RVector x(mm);
        if (rs == 0) {
            x = w / w.norm();
        } else {
            GaussianRng rng(derive_seed(opts.seed, 0xa5c3000 + rs));
            for (int k = 0; k < mm; ++k) x[k] = rng.normal();
            if (x.norm() < 1e-14) x = w;
            x /= x.norm();
        }
        double vbest = -1.0;
        int last_gain = 0;
        int failed_searches = 0;
        for (int it = 0; it < opts.subgradient_iters; ++it) {
            ++best.iterations;
            evaluate_into(m, x, ws, ws.gx);
            ws.es.compute(ws.gx);
            const RVector lam = ws.es.eigenvalues();
            const double sigma = sigma_from_eigs(lam);
            if (sigma < 1e-12 * x.norm()) {
                if (std::abs(w.dot(x)) > 1e-10 * w.norm()) {
                    throw NumericalError(
                        "commutator seminorm vanishes along a direction the states separate; "
                        "distance is unbounded");
                }
                break;
            }
            const double v = w.dot(x) / sigma;
            if (v > vbest + opts.tol) {
                vbest = v;
                if (v > best.value) {
                    best.value = v;
                    best.x = x / sigma;
                }
                last_gain = it;
            }
            if (it - last_gain > opts.subgradient_stall) break;
            RVector g = seminorm_subgradient(m, ws.es.eigenvectors(), lam, sigma, ws);
            const double gg = g.squaredNorm();
            if (gg < 1e-26) break;
            RVector d = w - (w.dot(g) / gg) * g;
            if (d.norm() < 1e-13 * w.norm()) break;
            double step = 0.5 * x.norm() / d.norm();
            bool improved = false;
            for (int bt = 0; bt < 10; ++bt) {
                RVector xt = x + step * d;
                const double st = sigma_at(m, xt, ws);
                if (st > 1e-14 && w.dot(xt) / st > v) {
                    x = xt;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) {
                // kink: nudge once to change the active eigenvalue set; a
                // second consecutive failure means the ascent is done here
                if (++failed_searches >= 2) break;
                x += (1e-3 * x.norm() / d.norm()) * d;
            } else {
                failed_searches = 0;
            }
        }
    }
    return best;
}

struct BarrierOutcome {
    bool gap_met = false;
    int newton_steps = 0;
};

// Central-path polish of max w.x subject to -I <= G(x) <= I. The barrier
// parameter is pushed until the bound 2r/t on the remaining gap drops below
// opts.barrier_gap; every iterate stays strictly feasible, so rescaling the
// final point by its seminorm always yields a certified lower bound.
BarrierOutcome barrier_phase(const CommutatorModel& m, const RVector& w, RVector& x,
                             const DistanceOptions& opts, SolveWorkspace& ws) {
    const int mm = m.size();
    const int r = m.reduced_dim;
    BarrierOutcome out;
    double t = opts.barrier_t0;
    RMatrix hess(mm, mm);
    RMatrix stack(mm, 4 * r * r);
    double last_dec2 = 1.0;  // squared Newton decrement at the current iterate
    for (int stage = 0; stage < 30; ++stage) {
        for (int inner = 0; inner < opts.newton_iters; ++inner) {
            ++out.newton_steps;
            evaluate_into(m, x, ws, ws.gx);
            ws.es.compute(ws.gx);
            RVector lam = ws.es.eigenvalues();
            double reach = sigma_from_eigs(lam);
            if (reach >= 1.0) {  // safeguard, line search should prevent this
                x *= (1.0 - 1e-9) / reach;
                evaluate_into(m, x, ws, ws.gx);
                ws.es.compute(ws.gx);
                lam = ws.es.eigenvalues();
            }
            const Matrix& E = ws.es.eigenvectors();
            RVector wm = (1.0 - lam.array()).inverse();
            RVector wp = (1.0 + lam.array()).inverse();
            RVector smw = wm.array().sqrt();
            RVector spw = wp.array().sqrt();

            RVector grad(mm);
            for (int k = 0; k < mm; ++k) {
                ws.tmp.noalias() = m.generators[k] * E;
                ws.ghat.noalias() = E.adjoint() * ws.tmp;
                double diag = 0.0;
                for (int a = 0; a < r; ++a)
                    diag += (wm[a] - wp[a]) * ws.ghat(a, a).real();
                grad[k] = -t * w[k] + diag;
                for (int b = 0; b < r; ++b) {
                    for (int a = 0; a < r; ++a) {
                        const cxd zm = smw[a] * smw[b] * ws.ghat(a, b);
                        const cxd zp = spw[a] * spw[b] * ws.ghat(a, b);
                        stack(k, (b * r + a) * 2) = zm.real();
                        stack(k, (b * r + a) * 2 + 1) = zm.imag();
                        stack(k, 2 * r * r + (b * r + a) * 2) = zp.real();
                        stack(k, 2 * r * r + (b * r + a) * 2 + 1) = zp.imag();
                    }
                }
            }
            hess.setZero();
            hess.selfadjointView<Eigen::Lower>().rankUpdate(stack);
            hess = hess.selfadjointView<Eigen::Lower>();

            // diagonal preconditioning keeps the solve sane at large t
            RVector dscale = hess.diagonal().array().max(1e-300).sqrt().inverse();
            RMatrix hs = dscale.asDiagonal() * hess * dscale.asDiagonal();
            hs.diagonal().array() += 1e-13;
            Eigen::LDLT<RMatrix> ldlt(hs);
            if (ldlt.info() != Eigen::Success) {
                if (std::getenv("FUZZYVIS_BARRIER_TRACE"))
                    std::fprintf(stderr, "[barrier] ldlt fail stage=%d inner=%d t=%g\n", stage, inner, t);
                return out;
            }
            RVector delta = dscale.asDiagonal() * ldlt.solve((-grad.array() * dscale.array()).matrix());
            const double dec2 = -grad.dot(delta);
            if (!std::isfinite(dec2)) {
                last_dec2 = 1.0;
                break;
            }
            last_dec2 = std::max(dec2, 0.0);
            if (dec2 <= 0.0) break;
            if (dec2 * 0.5 < 1e-11) break;  // centered for this t

            double phi0 = -t * w.dot(x);
            for (int a = 0; a < r; ++a) phi0 -= std::log1p(-lam[a]) + std::log1p(lam[a]);
            evaluate_into(m, delta, ws, ws.gdelta);
            double beta = 1.0;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                ws.trial = ws.gx + beta * ws.gdelta;
                ws.es.compute(ws.trial, Eigen::EigenvaluesOnly);
                const RVector& lt = ws.es.eigenvalues();
                if (sigma_from_eigs(lt) < 1.0) {
                    double phi = -t * w.dot(x + beta * delta);
                    bool ok = true;
                    for (int a = 0; a < r; ++a) {
                        phi -= std::log1p(-lt[a]) + std::log1p(lt[a]);
                        if (!std::isfinite(phi)) { ok = false; break; }
                    }
                    if (ok && phi <= phi0 - 0.25 * beta * dec2) {
                        x += beta * delta;
                        accepted = true;
                        break;
                    }
                }
                beta *= 0.5;
            }
            if (!accepted) {
                // The merit function carries absolute rounding noise of order
                // eps * t * |w.x|, so once the required Armijo decrease falls
                // under that floor the search cannot resolve it even though the
                // iterate is essentially centered. Accept the stage in that case
                // as long as the decrement is inside the certificate's margin.
                const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                                     (t * (std::abs(w.dot(x)) + 1.0) + 8.0 * r);
                if (dec2 <= 5e-3 && 0.25 * dec2 <= noise) break;
                if (std::getenv("FUZZYVIS_BARRIER_TRACE"))
                    std::fprintf(stderr, "[barrier] ls fail stage=%d inner=%d t=%g dec2=%g\n", stage, inner, t, dec2);
                return out;  // genuinely stuck away from the central path
            }
        }
        // Self-concordance gives gap <= (nu + lam*(lam + sqrt(nu))/(1 - lam)) / t
        // at an approximate center with Newton decrement lam and nu = 2r. The
        // decrement threshold 5e-3 keeps lam <= 0.1 even with the ridge in the
        // Hessian solve understating it by a factor of two.
        if (last_dec2 <= 5e-3) {
            const double nu = 2.0 * r;
            if ((nu + 0.12 * std::sqrt(nu) + 0.05) / t <= opts.barrier_gap) {
                out.gap_met = true;
                return out;
            }
        }
        t *= opts.barrier_mu;
    }
    return out;
}

std::string cache_key(const std::string& fingerprint, BasisKind kind, int model_size,
                      const DistanceOptions& opts, std::uint64_t pair_seed,
                      const LocalizedState& s1, const LocalizedState& s2, int i, int j) {
    std::ostringstream os;
    char buf[128];
    os << "triple:" << fingerprint << "|basis:" << basis_kind_name(kind) << ":" << model_size;
    std::snprintf(buf, sizeof(buf), "|tol:%.17g|slack:%.17g", opts.tol, opts.feas_slack);
    os << buf;
    os << "|sg:" << opts.subgradient_restarts << ":" << opts.subgradient_iters << ":"
       << opts.subgradient_stall << "|nt:" << opts.newton_iters;
    std::snprintf(buf, sizeof(buf), "|t0:%.17g|mu:%.17g|gap:%.17g", opts.barrier_t0,
                  opts.barrier_mu, opts.barrier_gap);
    os << buf << "|seed:" << pair_seed << "|pair:" << i << ":" << j;
    auto put_state = [&os, &buf](const LocalizedState& s) {
        for (int k = 0; k < s.vector.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "|%.17g,%.17g", s.vector[k].real(),
                          s.vector[k].imag());
            os << buf;
        }
    };
    put_state(s1);
    put_state(s2);
    return sha256_hex(os.str());
}

bool load_cached(const std::filesystem::path& file, int model_size, DistanceResult& out) {
    std::ifstream in(file);
    if (!in) return false;
    try {
        nlohmann::json j;
        in >> j;
        out.value = j.at("value").get<double>();
        out.lipschitz_norm = j.at("lipschitz_norm").get<double>();
        out.iterations = j.at("iterations").get<int>();
        out.converged = j.at("converged").get<bool>();
        const auto& wj = j.at("witness");
        if (static_cast<int>(wj.size()) != model_size) return false;
        out.witness.resize(model_size);
        for (int k = 0; k < model_size; ++k) out.witness[k] = wj[k].get<double>();
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

void store_cached(const std::filesystem::path& file, const DistanceResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["lipschitz_norm"] = r.lipschitz_norm;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["witness"] = std::vector<double>(r.witness.data(), r.witness.data() + r.witness.size());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream outf(tmp);
        outf << j.dump() << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

std::string triple_fingerprint(const FiniteSpectralTriple& t) {
    const Matrix& d = t.dirac;
    std::string bytes(reinterpret_cast<const char*>(d.data()),
                      sizeof(cxd) * static_cast<std::size_t>(d.size()));
    return sha256_hex(bytes);
}

}  // namespace

Matrix CommutatorModel::evaluate(const RVector& coeffs) const {
    if (coeffs.size() != size()) throw ArgumentError("coefficient count does not match basis");
    CVector xc = coeffs.cast<cxd>();
    CVector flat = stacked * xc;
    return Eigen::Map<Matrix>(flat.data(), reduced_dim, reduced_dim);
}

Matrix CommutatorModel::reconstruct(const RVector& coeffs) const {
    if (coeffs.size() != size()) throw ArgumentError("coefficient count does not match basis");
    Matrix a = Matrix::Zero(n, n);
    for (int k = 0; k < size(); ++k) a += coeffs[k] * basis[k];
    return a;
}

CommutatorModel build_commutator_model(const FiniteSpectralTriple& t,
                                       std::vector<Matrix> traceless_basis) {
    CommutatorModel m;
    m.n = t.n;
    m.reduced_dim = t.clifford.dim() * t.n;
    m.basis = std::move(traceless_basis);
    const int r = m.reduced_dim;
    m.generators.reserve(m.basis.size());
    m.stacked.resize(r * r, static_cast<int>(m.basis.size()));
    const cxd iunit(0.0, 1.0);
    for (std::size_t k = 0; k < m.basis.size(); ++k) {
        Matrix g = iunit * reduced_commutator(t, m.basis[k]);
        const double defect = hermiticity_defect(g);
        if (defect > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
            throw NumericalError("reduced commutator generator is not hermitian; defect " +
                                 std::to_string(defect));
        }
        g = 0.5 * (g + Matrix(g.adjoint()));
        m.stacked.col(static_cast<int>(k)) = Eigen::Map<CVector>(g.data(), r * r);
        m.generators.push_back(std::move(g));
    }
    return m;
}

double lipschitz_seminorm(const FiniteSpectralTriple& t, const Matrix& a) {
    if (a.rows() != t.n || a.cols() != t.n) {
        throw ArgumentError("algebra element dimension does not match the triple");
    }
    Matrix rho = left_action(t, a);
    Matrix comm = t.dirac * rho - rho * t.dirac;
    return spectral_norm_power(comm);
}

DistanceResult connes_distance_model(const CommutatorModel& model, const LocalizedState& s1,
                                     const LocalizedState& s2, const DistanceOptions& opts) {
    const int mm = model.size();
    DistanceResult res;
    res.witness = RVector::Zero(mm);
    if (mm == 0) {  // trivial algebra: every state evaluation coincides
        res.converged = true;
        return res;
    }
    if (s1.vector.size() != model.n || s2.vector.size() != model.n) {
        throw ArgumentError("state dimension does not match the model");
    }
    RVector w(mm);
    for (int k = 0; k < mm; ++k) {
        const cxd e1 = (s1.vector.adjoint() * model.basis[k] * s1.vector)(0);
        const cxd e2 = (s2.vector.adjoint() * model.basis[k] * s2.vector)(0);
        w[k] = e1.real() - e2.real();
    }
    if (w.cwiseAbs().maxCoeff() < 1e-14) {  // coincident states
        res.converged = true;
        return res;
    }

    SolveWorkspace ws;
    Phase1Result p1 = subgradient_phase(model, w, opts, ws);
    res.iterations = p1.iterations;

    RVector x = p1.x;
    double sig = sigma_at(model, x, ws);
    if (sig < 1e-14) {
        throw NumericalError("seminorm degenerate at the ascent solution");
    }
    x *= 0.98 / sig;  // strictly interior start for the barrier
    BarrierOutcome bo = barrier_phase(model, w, x, opts, ws);
    res.iterations += bo.newton_steps;

    sig = sigma_at(model, x, ws);
    if (sig < 1e-14) throw NumericalError("seminorm degenerate after polish");
    x /= sig;
    double value = w.dot(x);
    if (value < 0) {
        x = -x;
        value = -value;
    }
    // keep the ascent answer if the polish somehow went backwards
    if (p1.value > value) {
        x = p1.x / sigma_at(model, p1.x, ws);
        value = w.dot(x);
    }
    res.witness = x;
    res.value = value;
    res.lipschitz_norm = sigma_at(model, x, ws);
    res.converged = bo.gap_met && res.lipschitz_norm <= 1.0 + opts.feas_slack;
    return res;
}

DistanceResult connes_distance(const FiniteSpectralTriple& t, const AlgebraBasis& basis,
                               const LocalizedState& s1, const LocalizedState& s2,
                               const DistanceOptions& opts) {
    CommutatorModel model = build_commutator_model(t, traceless_orthonormal_basis(basis));
    return connes_distance_model(model, s1, s2, opts);
}

bool DistanceMatrix::all_converged() const {
    return std::all_of(pair_converged.begin(), pair_converged.end(),
                       [](std::uint8_t f) { return f != 0; });
}

const RVector& DistanceMatrix::witness_at(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j || i < 0 || j >= size)
        throw ArgumentError("witness_at: indices must name a distinct valid pair");
    const std::size_t slot = static_cast<std::size_t>(i) * (2 * size - i - 1) / 2 + (j - i - 1);
    return witnesses.at(slot);
}

DistanceMatrix distance_matrix(const FiniteSpectralTriple& t, const AlgebraBasis& basis,
                               const StateEnsemble& states, const DistanceOptions& opts) {
    const int nstates = static_cast<int>(states.states.size());
    DistanceMatrix dm;
    dm.size = nstates;
    dm.values = RMatrix::Zero(nstates, nstates);
    dm.pair_converged.assign(static_cast<std::size_t>(nstates) * nstates, 1);
    dm.basis_kind = basis.kind;
    dm.opts = opts;
    if (nstates < 2) return dm;

    CommutatorModel model = build_commutator_model(t, traceless_orthonormal_basis(basis));

    const bool use_cache = !opts.cache_dir.empty();
    std::filesystem::path cdir;
    std::string fingerprint;
    if (use_cache) {
        cdir = opts.cache_dir;
        std::filesystem::create_directories(cdir);
        fingerprint = triple_fingerprint(t);
    }

    struct Pair {
        int i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(nstates) * (nstates - 1) / 2);
    for (int i = 0; i < nstates; ++i)
        for (int j = i + 1; j < nstates; ++j) pairs.push_back({i, j});

    std::vector<DistanceResult> results(pairs.size());
    parallel_for(pairs.size(), opts.workers, [&](std::size_t p) {
        const int i = pairs[p].i;
        const int j = pairs[p].j;
        DistanceOptions local = opts;
        local.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i) * 1000003u + j);
        std::filesystem::path cfile;
        if (use_cache) {
            const std::string key = cache_key(fingerprint, basis.kind, model.size(), opts,
                                              local.seed, states.states[i], states.states[j],
                                              i, j);
            cfile = cdir / ("pair_" + key + ".json");
            if (load_cached(cfile, model.size(), results[p])) return;
        }
        results[p] = connes_distance_model(model, states.states[i], states.states[j], local);
        if (use_cache) store_cached(cfile, results[p]);
    });

    dm.witnesses.resize(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const int i = pairs[p].i;
        const int j = pairs[p].j;
        dm.values(i, j) = results[p].value;
        dm.values(j, i) = results[p].value;
        const std::uint8_t flag = results[p].converged ? 1 : 0;
        dm.pair_converged[static_cast<std::size_t>(i) * nstates + j] = flag;
        dm.pair_converged[static_cast<std::size_t>(j) * nstates + i] = flag;
        dm.witnesses[p] = std::move(results[p].witness);
    }
    return dm;
}

double max_triangle_violation(const RMatrix& dm) {
    const int n = static_cast<int>(dm.rows());
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                worst = std::max(worst, dm(i, k) - dm(i, j) - dm(j, k));
            }
        }
    }
    return n >= 3 ? worst : 0.0;
}

}  // namespace fuzzyvis
