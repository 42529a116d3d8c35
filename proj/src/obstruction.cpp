#include "shf/obstruction.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"
#include "shf/rng.hpp"

namespace shf {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Falsified: return "not an obstruction";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Rejected: return "rejected";
    }
    return "?";
}

// --- generic pair and compatibility -----------------------------------------

GenericPair generic_pair(ClosedFormBasis z2, ClosedFormBasis z3, const std::string& bprefix, const std::string& aprefix) {
    GenericPair p;
    p.z2 = std::move(z2);
    p.z3 = std::move(z3);
    for (int i = 1; i <= p.z2.dim(); ++i) p.b.push_back(variable(bprefix + std::to_string(i)));
    for (int i = 1; i <= p.z3.dim(); ++i) p.a.push_back(variable(aprefix + std::to_string(i)));
    p.F = p.z2.generic(bprefix);
    p.rho = p.z3.generic(aprefix);
    return p;
}

GenericPair generic_pair(const LieAlgebra& g) { return generic_pair(closed_forms(g, 2), closed_forms(g, 3)); }

Form<Rational> GenericPair::F_at(const std::vector<Rational>& bval) const {
    if (static_cast<int>(bval.size()) != z2.dim()) throw DomainError("b-point has the wrong length");
    int n = z3.basis.empty() ? (z2.basis.empty() ? 6 : z2.basis[0].dim()) : z3.basis[0].dim();
    Form<Rational> F(n);
    for (int j = 0; j < z2.dim(); ++j)
        if (!is_zero(bval[j])) F += z2.basis[j].scaled(bval[j]);
    return F;
}

namespace {

Matrix<Rational> five_form_columns(const Form<Rational>& F, const std::vector<Form<Rational>>& rhos, int n) {
    auto rows = basis_masks(n, n - 1);
    Matrix<Rational> M(static_cast<int>(rows.size()), static_cast<int>(rhos.size()));
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        Form<Rational> w = wedge(F, rhos[i]);
        for (std::size_t r = 0; r < rows.size(); ++r) M(static_cast<int>(r), static_cast<int>(i)) = w.coefficient(rows[r]);
    }
    return M;
}

}  // namespace

Matrix<Rational> GenericPair::compatibility_matrix(const std::vector<Rational>& bval) const {
    Form<Rational> F = F_at(bval);
    return five_form_columns(F, z3.basis, F.dim());
}

Compatibility solve_compatibility(const GenericPair& pair, const std::vector<Rational>& bval) {
    Compatibility c;
    c.b = bval;
    auto e = rref(pair.compatibility_matrix(bval));
    std::vector<bool> pivot(pair.a.size(), false);
    for (int p : e.pivots) pivot[p] = true;
    for (int i = 0; i < static_cast<int>(pair.a.size()); ++i) (pivot[i] ? c.eliminated : c.free).push_back(i);
    for (std::size_t row = 0; row < e.pivots.size(); ++row) {
        Poly expr;
        for (int f : c.free) {
            const Rational& r = e.reduced(static_cast<int>(row), f);
            if (!is_zero(r)) expr -= Poly::var(pair.a[f]).scaled(r);
        }
        c.substitution[pair.a[e.pivots[row]]] = expr;
    }
    Form<Poly> rho(pair.rho.dim());
    for (const auto& [m, p] : pair.rho.terms()) rho.add(m, p.substitute(c.substitution));
    c.rho = std::move(rho);
    return c;
}

// --- vectors and covectors from text -----------------------------------------

std::vector<Rational> parse_vector(const std::string& text, int n, const Bindings& env) {
    Form<Rational> f = evaluate_rational(parse_form(text), n, env);
    std::vector<Rational> v(n, Rational(0));
    for (const auto& [m, c] : f.terms()) {
        if (degree_of(m) != 1) throw ParseError("vector '" + text + "' has a term of degree " + std::to_string(degree_of(m)));
        v[std::countr_zero(m)] = c;
    }
    return v;
}

Form<Quadratic> parse_covector(const std::string& text, int n, const Bindings& env) {
    Form<Quadratic> f = evaluate(parse_form(text), n, env);
    if (!f.is_homogeneous(1)) throw ParseError("covector '" + text + "' is not a 1-form");
    return f;
}

namespace {

// --- univariate helpers for the residual rank-drop test ---------------------

using Uni = std::vector<Rational>;  // low degree first

void trim(Uni& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

Uni uni_rem(Uni a, const Uni& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Uni uni_gcd(Uni a, Uni b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Uni r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int sign_changes(const std::vector<int>& s) {
    int n = 0, last = 0;
    for (int x : s) {
        if (x == 0) continue;
        if (last != 0 && x != last) ++n;
        last = x;
    }
    return n;
}

// number of distinct real roots (Sturm)
int real_root_count(Uni p) {
    trim(p);
    if (p.size() <= 1) return 0;
    Uni dp;
    for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
    std::vector<Uni> seq{p, dp};
    while (true) {
        Uni r = uni_rem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        seq.push_back(std::move(r));
    }
    std::vector<int> at_pos, at_neg;
    for (const auto& q : seq) {
        int s = sgn(q.back());
        at_pos.push_back(s);
        at_neg.push_back(((q.size() - 1) % 2 == 0) ? s : -s);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

Uni restrict_to_line(const Poly& p, const std::vector<VarId>& vars, const std::vector<Rational>& w,
                     const std::vector<Rational>& v) {
    VarId t = variable("_t");
    std::map<VarId, Poly> sub;
    for (std::size_t i = 0; i < vars.size(); ++i) sub[vars[i]] = Poly(w[i]) + Poly::var(t).scaled(v[i]);
    Poly q = p.substitute(sub);
    Uni out(q.total_degree() + 1, Rational(0));
    for (const auto& [m, c] : q.terms()) out[m.degree()] = c;
    trim(out);
    return out;
}

Rational uni_eval(const Uni& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Uni uni_quot(Uni a, const Uni& b) {
    trim(a);
    Uni q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return q;
}

// Rational roots: Sturm isolation of the squarefree part, bisection, then
// continued-fraction convergents checked exactly.
std::vector<Rational> rational_roots(Uni p) {
    trim(p);
    std::vector<Rational> roots;
    if (p.size() <= 1) return roots;
    Uni dp;
    for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
    Uni sqf = dp.empty() ? p : uni_quot(p, uni_gcd(p, dp));
    if (sqf.size() <= 1) return roots;
    Uni dsqf;
    for (std::size_t i = 1; i < sqf.size(); ++i) dsqf.push_back(sqf[i] * static_cast<long>(i));
    std::vector<Uni> chain{sqf, dsqf};
    while (true) {
        Uni r = uni_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        chain.push_back(std::move(r));
    }
    auto changes = [&](const Rational& x) {
        std::vector<int> s;
        for (const auto& q : chain) s.push_back(sgn(uni_eval(q, x)));
        return sign_changes(s);
    };
    Rational bound(1);
    for (std::size_t i = 0; i + 1 < sqf.size(); ++i) bound = std::max(bound, Rational(abs(sqf[i] / sqf.back()) + 1));
    const Rational width(Rational(1) / Rational(mpz_class(1) << 100));
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int count = changes(lo) - changes(hi);  // roots in (lo, hi]
        if (count == 0) continue;
        if (count > 1) {
            Rational mid = (lo + hi) / 2;
            stack.emplace_back(lo, mid);
            stack.emplace_back(mid, hi);
            continue;
        }
        if (is_zero(uni_eval(sqf, hi))) {
            roots.push_back(hi);
            continue;
        }
        int shi = sgn(uni_eval(sqf, hi));
        bool exact = false;
        while (hi - lo > width) {
            Rational mid = (lo + hi) / 2;
            int sm = sgn(uni_eval(sqf, mid));
            if (sm == 0) {
                roots.push_back(mid);
                exact = true;
                break;
            }
            if (sm == shi) hi = mid;
            else lo = mid;
        }
        if (exact) continue;
        // convergents of the midpoint
        Rational x = (lo + hi) / 2;
        mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
        for (int step = 0; step < 200 && k0 < (mpz_class(1) << 40); ++step) {
            mpz_class a;
            mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
            mpz_class h = a * h0 + h1, k = a * k0 + k1;
            h1 = h0;
            h0 = h;
            k1 = k0;
            k0 = k;
            Rational c(h, k);
            c.canonicalize();
            if (c > lo && c <= hi && is_zero(uni_eval(sqf, c))) {
                roots.push_back(c);
                break;
            }
            Rational frac = x - Rational(a);
            if (is_zero(frac)) break;
            x = Rational(1) / frac;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Hyperplanes {sum_i l_i u_i = 0} through the origin on which both D1 and D2
// vanish. Traces on the coordinate lines w + y e_t are matched across the
// coordinate planes through w; every candidate is confirmed exactly.
std::vector<std::vector<Rational>> linear_components(const Poly& D1, const Poly& D2, const std::vector<VarId>& coords, Rng& rng) {
    int s = static_cast<int>(coords.size());
    std::vector<Rational> w(s);
    for (auto& x : w) x = Rational(rng.range(-50, 50));
    auto eval = [&](const Poly& D, const std::vector<Rational>& u) {
        std::map<VarId, Rational> val;
        for (int t = 0; t < s; ++t) val[coords[t]] = u[t];
        return D.evaluate(val);
    };
    auto on_both = [&](const std::vector<Rational>& u) { return is_zero(eval(D1, u)) && is_zero(eval(D2, u)); };
    std::vector<std::vector<Rational>> traces(s);
    for (int t = 0; t < s; ++t) {
        std::vector<Rational> dir(s, Rational(0));
        dir[t] = 1;
        traces[t] = rational_roots(uni_gcd(restrict_to_line(D1, coords, w, dir), restrict_to_line(D2, coords, w, dir)));
    }
    std::vector<std::vector<Rational>> found;
    for (int a = 0; a < s; ++a)
        for (const Rational& ya : traces[a]) {
            if (is_zero(ya)) continue;
            // normalize l_a = 1, so l(w) = -ya
            std::vector<Rational> ell(s, Rational(0));
            ell[a] = 1;
            bool ok = true;
            for (int t = 0; t < s && ok; ++t) {
                if (t == a) continue;
                std::vector<Rational> options{Rational(0)};
                for (const Rational& yt : traces[t])
                    if (!is_zero(yt)) options.push_back(ya / yt);
                bool matched = false;
                for (const Rational& lt : options) {
                    bool pass = true;
                    for (int probe = 0; probe < 2 && pass; ++probe) {
                        // a point of {l(w) + y + lt z = 0} in the plane w + y e_a + z e_t
                        Rational r(rng.range(-1000, 1000), rng.range(1, 97));
                        r.canonicalize();
                        std::vector<Rational> u = w;
                        if (is_zero(lt)) {
                            u[a] += ya;
                            u[t] += r;
                        } else {
                            u[a] += r;
                            u[t] += (ya - r) / lt;
                        }
                        pass = on_both(u);
                    }
                    if (pass) {
                        ell[t] = lt;
                        matched = true;
                        break;
                    }
                }
                ok = matched;
            }
            if (!ok) continue;
            Rational lw(0);
            for (int t = 0; t < s; ++t) lw += ell[t] * w[t];
            if (lw != -ya) continue;
            // primitive integer normal
            mpz_class den = 1;
            for (const auto& c : ell) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
            mpz_class g = 0;
            for (auto& c : ell) {
                c *= den;
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
            }
            for (auto& c : ell) c /= g;
            if (std::find(found.begin(), found.end(), ell) != found.end()) continue;
            found.push_back(ell);
        }
    return found;
}

// --- strata ------------------------------------------------------------------

struct Sample {
    std::vector<Rational> b;
    Form<Rational> F;
    std::vector<Form<Rational>> kernel;
};

struct Stratum {
    std::vector<VarId> coords;  // stratum coordinates, a subset of the b's
    Matrix<Rational> B;         // b = B u
    std::vector<std::string> equations;
    bool skipped = false;
    int rank = 0;
    Poly stability;
    std::string residual;
    bool residual_real = false;
};

std::string matrix_key(const Matrix<Rational>& B) {
    auto e = rref(B.transpose());
    std::string key;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        for (int j = 0; j < e.reduced.cols(); ++j) key += to_string(e.reduced(static_cast<int>(i), j)) + ",";
    return key;
}

class Plan {
public:
    Plan(const LieAlgebra& g, const CertifyConfig& cfg) : cfg_(cfg), pair_(generic_pair(g)) {
        n_ = g.dim();
        if (n_ != 6) throw DomainError("obstruction certificates are implemented for 6-dimensional algebras");
        for (const auto& Fj : pair_.z2.basis) Mj_.push_back(five_form_columns(Fj, pair_.z3.basis, n_));
        discover();
    }

    const GenericPair& pair() const { return pair_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    int dim() const { return n_; }

    Matrix<Rational> M_at(const std::vector<Rational>& b) const {
        Matrix<Rational> M(n_, pair_.z3.dim());
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!is_zero(b[j])) M = M + Mj_[j].scaled(b[j]);
        return M;
    }

    std::vector<Rational> b_of(const Stratum& st, const std::vector<Rational>& u) const { return st.B * u; }

    // accepted sample of stratum s, trial t (nullptr when none was found)
    const Sample* sample(std::size_t s, int t) {
        auto key = std::pair{s, t};
        auto& cached = samples_[key];
        if (rejects_.count(key)) return cached ? &*cached : nullptr;
        const Stratum& st = strata_[s];
        Rng rng = Rng::substream(cfg_.seed, {s, static_cast<std::uint64_t>(t)});
        int rejected = 0;
        for (int attempt = 0; attempt < cfg_.max_resamples; ++attempt) {
            std::vector<Rational> u(st.coords.size());
            for (auto& x : u) x = rng.centered(cfg_.sample_size);
            auto b = b_of(st, u);
            Form<Rational> F = pair_.F_at(b);
            if (is_zero(stability_coefficient(F, default_volume(n_)))) {
                ++rejected;
                continue;
            }
            Matrix<Rational> M = M_at(b);
            if (rank_fraction_free(M) != st.rank) {
                ++rejected;
                continue;
            }
            Sample smp{b, F, {}};
            for (const auto& v : nullspace_fraction_free(M)) {
                Form<Rational> w(n_);
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (!is_zero(v[i])) w += pair_.z3.basis[i].scaled(v[i]);
                smp.kernel.push_back(std::move(w));
            }
            cached = std::move(smp);
            break;
        }
        rejects_[key] = rejected;
        return cached ? &*cached : nullptr;
    }
    int rejected(std::size_t s, int t) const {
        auto it = rejects_.find({s, t});
        return it == rejects_.end() ? 0 : it->second;
    }

    // symbolic F(u) and a Cramer kernel basis on a stratum
    template <class C>
    void symbolic(std::size_t s, Form<Polynomial<C>>& F, std::vector<Form<Polynomial<C>>>& kernel) const {
        using P = Polynomial<C>;
        const Stratum& st = strata_[s];
        std::vector<P> bu(pair_.z2.dim());
        for (int j = 0; j < pair_.z2.dim(); ++j)
            for (std::size_t t = 0; t < st.coords.size(); ++t)
                if (!is_zero(st.B(j, static_cast<int>(t)))) bu[j] += P::var(st.coords[t]).scaled(C(st.B(j, static_cast<int>(t))));
        F = Form<P>(n_);
        for (int j = 0; j < pair_.z2.dim(); ++j)
            for (const auto& [m, c] : pair_.z2.basis[j].terms()) F.add(m, bu[j].scaled(C(c)));
        int k = pair_.z3.dim();
        Matrix<P> M(n_, k);
        for (int j = 0; j < pair_.z2.dim(); ++j)
            for (int r = 0; r < n_; ++r)
                for (int c = 0; c < k; ++c)
                    if (!is_zero(Mj_[j](r, c))) M(r, c) += bu[j].scaled(C(Mj_[j](r, c)));
        // pivots from a generic point of the stratum
        Rng rng = Rng::substream(cfg_.seed, {0x5E1EC7, s});
        Matrix<Rational> M0;
        for (int attempt = 0;; ++attempt) {
            std::vector<Rational> u(st.coords.size());
            for (auto& x : u) x = Rational(rng.range(-1000, 1000));
            M0 = M_at(b_of(st, u));
            if (rank(M0) == st.rank) break;
            if (attempt > 50) throw DomainError("no generic point found on a stratum");
        }
        auto cols = rref(M0).pivots;
        auto rows = rref(M0.transpose()).pivots;
        int r = st.rank;
        Matrix<P> A(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) A(i, j) = M(rows[i], cols[j]);
        P det = determinant(A);
        kernel.clear();
        std::vector<bool> is_pivot(k, false);
        for (int c : cols) is_pivot[c] = true;
        for (int f = 0; f < k; ++f) {
            if (is_pivot[f]) continue;
            std::vector<P> v(k);
            v[f] = det;
            for (int j = 0; j < r; ++j) {
                Matrix<P> Aj = A;
                for (int i = 0; i < r; ++i) Aj(i, j) = M(rows[i], f);
                v[cols[j]] = -determinant(Aj);
            }
            Form<P> w(n_);
            for (int i = 0; i < k; ++i)
                if (!v[i].is_zero())
                    for (const auto& [m, c] : pair_.z3.basis[i].terms()) w.add(m, v[i].scaled(C(c)));
            kernel.push_back(std::move(w));
        }
    }

private:
    void discover();
    void analyse(Stratum& st, std::deque<Stratum>& queue, Rng& rng);

    CertifyConfig cfg_;
    GenericPair pair_;
    int n_ = 6;
    std::vector<Matrix<Rational>> Mj_;
    std::vector<Stratum> strata_;
    std::map<std::pair<std::size_t, int>, std::optional<Sample>> samples_;  // node-stable
    std::map<std::pair<std::size_t, int>, int> rejects_;
};

void Plan::discover() {
    Rng rng = Rng::substream(cfg_.seed, {0xD15C0});
    Stratum root;
    root.coords = pair_.b;
    root.B = Matrix<Rational>::identity(pair_.z2.dim());
    std::deque<Stratum> queue{root};
    std::set<std::string> seen;
    while (!queue.empty()) {
        Stratum st = std::move(queue.front());
        queue.pop_front();
        if (st.coords.empty() || !seen.insert(matrix_key(st.B)).second) continue;
        analyse(st, queue, rng);
        strata_.push_back(std::move(st));
    }
}

// Linear forms sum_i c_i u_i tried as components of the rank-drop locus.
std::vector<std::vector<std::pair<int, int>>> candidate_factors(int s) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (int i = 0; i < s; ++i) out.push_back({{i, 1}});
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            for (auto [ci, cj] : std::initializer_list<std::pair<int, int>>{{1, 1}, {1, -1}, {1, 2}, {1, -2}, {2, 1}, {2, -1}}) out.push_back({{i, ci}, {j, cj}});
    return out;
}

void Plan::analyse(Stratum& st, std::deque<Stratum>& queue, Rng& rng) {
    int s = static_cast<int>(st.coords.size());
    int k = pair_.z3.dim();
    std::vector<Poly> u;
    for (VarId v : st.coords) u.push_back(Poly::var(v));
    // F(u) and its stability polynomial
    Form<Poly> F(n_);
    for (int j = 0; j < pair_.z2.dim(); ++j) {
        Poly bj;
        for (int t = 0; t < s; ++t)
            if (!is_zero(st.B(j, t))) bj += u[t].scaled(st.B(j, t));
        if (bj.is_zero()) continue;
        for (const auto& [m, c] : pair_.z2.basis[j].terms()) F.add(m, bj.scaled(c));
    }
    st.stability = stability_coefficient(F, default_volume(n_));
    if (st.stability.is_zero()) {
        st.skipped = true;
        return;
    }
    std::vector<Matrix<Rational>> N(s, Matrix<Rational>(n_, k));
    for (int t = 0; t < s; ++t)
        for (int j = 0; j < pair_.z2.dim(); ++j)
            if (!is_zero(st.B(j, t))) N[t] = N[t] + Mj_[j].scaled(st.B(j, t));
    auto at = [&](const std::vector<Rational>& uv) {
        Matrix<Rational> M(n_, k);
        for (int t = 0; t < s; ++t)
            if (!is_zero(uv[t])) M = M + N[t].scaled(uv[t]);
        return M;
    };
    auto random_u = [&](long range) {
        std::vector<Rational> uv(s);
        for (auto& x : uv) x = Rational(rng.range(-range, range));
        return uv;
    };
    for (int i = 0; i < 4; ++i) st.rank = std::max(st.rank, rank_fraction_free(at(random_u(100000))));
    int r = st.rank;
    if (r == 0) return;

    // two random combinations of the r-minors
    auto combination = [&]() {
        for (int attempt = 0; attempt < 8; ++attempt) {
            Matrix<Rational> L(r, n_), R(k, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < n_; ++j) L(i, j) = Rational(rng.range(-3, 3));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < r; ++j) R(i, j) = Rational(rng.range(-3, 3));
            Matrix<Poly> P(r, r);
            for (int t = 0; t < s; ++t) {
                Matrix<Rational> q = L * N[t] * R;
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        if (!is_zero(q(i, j))) P(i, j) += u[t].scaled(q(i, j));
            }
            Poly d = determinant(P);
            if (!d.is_zero()) return d;
        }
        throw DomainError("rank estimate on a stratum is inconsistent");
    };
    Poly D1 = combination(), D2 = combination();

    auto vanishes_on = [&](const Poly& D, int p, const Poly& expr) {
        // quick numeric screen, then exact substitution
        for (int probe = 0; probe < 2; ++probe) {
            auto uv = random_u(1000);
            std::map<VarId, Rational> val;
            for (int t = 0; t < s; ++t) val[st.coords[t]] = uv[t];
            std::map<VarId, Rational> val2 = val;
            val2[st.coords[p]] = expr.evaluate(val);
            if (!is_zero(D.evaluate(val2))) return false;
        }
        return D.substitute({{st.coords[p], expr}}).is_zero();
    };

    // split off the hyperplane sum_i coef_i u_i = 0 as a child stratum
    auto split = [&](const std::vector<Rational>& coef) {
        int p = -1;
        for (int i = 0; i < s && p < 0; ++i)
            if (abs(coef[i]) == 1) p = i;
        for (int i = 0; i < s && p < 0; ++i)
            if (!is_zero(coef[i])) p = i;
        Poly ell, expr;
        for (int i = 0; i < s; ++i) {
            if (is_zero(coef[i])) continue;
            ell += u[i].scaled(coef[i]);
            if (i != p) expr -= u[i].scaled(Rational(coef[i] / coef[p]));
        }
        while (D1.substitute({{st.coords[p], expr}}).is_zero()) D1 = exact_divide(D1, ell);
        while (D2.substitute({{st.coords[p], expr}}).is_zero()) D2 = exact_divide(D2, ell);

        Stratum child;
        child.equations = st.equations;
        child.equations.push_back(to_string(ell) + " = 0");
        Matrix<Rational> B(st.B.rows(), s - 1);
        int col = 0;
        for (int t = 0; t < s; ++t) {
            if (t == p) continue;
            child.coords.push_back(st.coords[t]);
            Rational kappa = -coef[t] / coef[p];
            for (int row = 0; row < st.B.rows(); ++row) B(row, col) = st.B(row, t) + kappa * st.B(row, p);
            ++col;
        }
        child.B = std::move(B);
        queue.push_back(std::move(child));
    };

    for (const auto& cand : candidate_factors(s)) {
        std::vector<Rational> coef(s, Rational(0));
        for (auto [i, c] : cand) coef[i] = c;
        int p = -1;
        for (int i = 0; i < s && p < 0; ++i)
            if (abs(coef[i]) == 1) p = i;
        Poly expr;
        for (int i = 0; i < s; ++i)
            if (i != p && !is_zero(coef[i])) expr -= u[i].scaled(Rational(coef[i] / coef[p]));
        if (!vanishes_on(D1, p, expr) || !vanishes_on(D2, p, expr)) continue;
        split(coef);
    }

    // hyperplane components not among the small candidates
    if (!D1.is_constant() && !D2.is_constant())
        for (const auto& coef : linear_components(D1, D2, st.coords, rng)) {
            int p = 0;
            while (is_zero(coef[p])) ++p;
            Poly expr;
            for (int i = 0; i < s; ++i)
                if (i != p && !is_zero(coef[i])) expr -= u[i].scaled(Rational(coef[i] / coef[p]));
            if (!D1.substitute({{st.coords[p], expr}}).is_zero() || !D2.substitute({{st.coords[p], expr}}).is_zero()) continue;
            split(coef);
        }

    // common nonlinear factors of the two minor combinations
    if (D1.is_constant() || D2.is_constant()) return;
    int common = -1, real = 0;
    for (int line = 0; line < 3; ++line) {
        auto w = random_u(50), v = random_u(50);
        Uni gcd = uni_gcd(restrict_to_line(D1, st.coords, w, v), restrict_to_line(D2, st.coords, w, v));
        int deg = gcd.empty() ? 0 : static_cast<int>(gcd.size()) - 1;
        common = common < 0 ? deg : std::min(common, deg);
        if (deg > 0) real = std::max(real, real_root_count(gcd));
    }
    if (common > 0) {
        st.residual_real = real > 0;
        st.residual = "nonlinear rank-drop component of degree " + std::to_string(common) +
                      (real > 0 ? " with real points (not explored)" : " with no real points on probe lines");
    }
}

// --- certificates ------------------------------------------------------------

std::string field_of(const Form<Quadratic>& a) {
    for (const auto& [m, c] : a.terms())
        if (!c.is_rational()) return "Q(sqrt" + std::to_string(c.radicand()) + ")";
    return "Q";
}

std::vector<std::string> coefficient_list(const Form<Quadratic>& a) {
    std::vector<std::string> out;
    for (int i = 1; i <= a.dim(); ++i) out.push_back(to_string(a.coefficient(index_mask(i))));
    return out;
}

std::vector<std::string> coefficient_list(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

std::string vector_text(const std::vector<Rational>& v) {
    Form<Rational> f(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) f.add(index_mask(static_cast<int>(i) + 1), v[i]);
    return to_string(f);
}

template <class S>
bool all_zero(const std::vector<std::vector<S>>& E) {
    for (const auto& row : E)
        for (const auto& x : row)
            if (!is_zero(x)) return false;
    return true;
}

template <class S>
std::vector<std::vector<S>> added(std::vector<std::vector<S>> a, const std::vector<std::vector<S>>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
    return a;
}

template <class S>
S quadratic_value(const std::vector<std::vector<S>>& E, const std::vector<long>& c) {
    S acc(0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j) {
            if (c[i] == 0 || c[j] == 0) continue;
            S t = scale(E[i][j], Rational(c[i] * c[j] * (i == j ? 1 : 2)));
            acc += t;
        }
    return acc;
}

Form<Rational> combine(const std::vector<Form<Rational>>& w, const std::vector<long>& c) {
    Form<Rational> out(w.front().dim());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (c[i]) out += w[i].scaled(Rational(c[i]));
    return out;
}

// coefficient vector c with c^T E c != 0 for a nonzero symmetric E
template <class S>
std::vector<long> nonzero_direction(const std::vector<std::vector<S>>& E) {
    std::size_t k = E.size();
    for (std::size_t i = 0; i < k; ++i)
        if (!is_zero(E[i][i])) {
            std::vector<long> c(k, 0);
            c[i] = 1;
            return c;
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!is_zero(E[i][j])) {
                std::vector<long> c(k, 0);
                c[i] = c[j] = 1;
                return c;
            }
    return {};
}

template <class P>
std::size_t term_count(const std::vector<std::vector<P>>& E) {
    std::size_t n = 0;
    for (const auto& row : E)
        for (const auto& x : row) n += x.terms().size();
    return n;
}

template <class P>
std::size_t term_count(const std::vector<Form<P>>& w) {
    std::size_t n = 0;
    for (const auto& f : w)
        for (const auto& [m, c] : f.terms()) n += c.terms().size();
    return n;
}

Rational stratum_bound(int degree, int rank, int trials, std::uint64_t S) {
    Rational p(static_cast<long>(degree));
    p /= Rational(static_cast<long>(S) - rank - 3);
    return pow(p, trials);
}

StratumRecord record_of(const Stratum& st) {
    StratumRecord r;
    r.subspace = st.equations.empty() ? "generic" : "";
    for (std::size_t i = 0; i < st.equations.size(); ++i) r.subspace += (i ? ", " : "") + st.equations[i];
    r.dimension = static_cast<int>(st.coords.size());
    r.rank = st.rank;
    r.stability = to_string(st.stability);
    r.skipped = st.skipped;
    r.residual = st.residual;
    return r;
}

enum class Family { P21i, P21ii };

struct P21Target {
    Family family;
    Form<Quadratic> alpha;          // P21-i
    std::vector<Rational> X, Y;     // P21-ii
};

Certificate run_p21(const LieAlgebra& g, Plan& plan, const P21Target& target, const CertifyConfig& cfg, int trials) {
    Certificate cert;
    cert.algebra = g.name();
    cert.seed = cfg.seed;
    cert.sample_size = cfg.sample_size;
    cert.trials = trials;
    cert.mode = cfg.exact ? "exact" : "randomized";
    if (target.family == Family::P21i) {
        cert.kind = "P21-i";
        cert.witness = {to_string(target.alpha)};
        cert.coefficients = {coefficient_list(target.alpha)};
        cert.field = field_of(target.alpha);
    } else {
        cert.kind = "P21-ii";
        cert.witness = {vector_text(target.X), vector_text(target.Y)};
        cert.coefficients = {coefficient_list(target.X), coefficient_list(target.Y)};
    }
    int n = plan.dim();
    bool zeroX = true, zeroY = true, anti = true;
    bool unsampled = false, unresolved = false;
    Rational bound(0);
    std::vector<const Sample*> seen;

    for (std::size_t s = 0; s < plan.strata().size(); ++s) {
        const Stratum& st = plan.strata()[s];
        StratumRecord rec = record_of(st);
        rec.kernel = plan.pair().z3.dim() - st.rank;
        if (st.skipped) {
            cert.strata.push_back(rec);
            continue;
        }
        if (st.residual_real) unresolved = true;
        rec.degree = (target.family == Family::P21i ? 2 : 1) + 2 * st.rank;
        cert.degree_bound = std::max(cert.degree_bound, rec.degree);

        // sampled points: nonemptiness evidence, and the randomized check itself
        int want = cfg.exact ? 1 : trials;
        for (int t = 0; t < want; ++t) {
            const Sample* smp = plan.sample(s, t);
            rec.rejected += plan.rejected(s, t);
            if (!smp) {
                unsampled = true;
                continue;
            }
            ++rec.accepted;
            seen.push_back(smp);
            if (!cert.nonempty && !smp->kernel.empty()) cert.nonempty = NonemptySample{smp->F, smp->kernel.front()};
            if (smp->kernel.empty()) continue;
            if (target.family == Family::P21i) {
                std::vector<Form<Quadratic>> w;
                for (const auto& x : smp->kernel) w.push_back(form_cast<Quadratic>(x));
                auto E = p21i_matrix(target.alpha, form_cast<Quadratic>(smp->F), w);
                if (!all_zero(E)) {
                    auto c = nonzero_direction(E);
                    cert.verdict = Verdict::Falsified;
                    cert.detail = "alpha ^ J~*alpha ^ F^2 = " + to_string(quadratic_value(E, c)) + " * (e123456, up to a positive factor) at F = " +
                                  to_string(smp->F) + ", rho = " + to_string(combine(smp->kernel, c));
                    cert.strata.push_back(rec);
                    return cert;
                }
            } else {
                auto QX = p21ii_matrix(smp->F, target.X, smp->kernel);
                auto QY = p21ii_matrix(smp->F, target.Y, smp->kernel);
                zeroX = zeroX && all_zero(QX);
                zeroY = zeroY && all_zero(QY);
                anti = anti && all_zero(added(QX, QY));
            }
        }
        if (cfg.exact) {
            bool fine = true;
            if (target.family == Family::P21i) {
                Form<QPoly> F;
                std::vector<Form<QPoly>> w;
                plan.symbolic<Quadratic>(s, F, w);
                if (term_count(w) > cfg.term_limit) throw ConfigError("exact mode: kernel expansion exceeds the term limit");
                Form<QPoly> a(n);
                for (const auto& [m, c] : target.alpha.terms()) a.add(m, QPoly(c));
                if (!w.empty()) {
                    auto E = p21i_matrix(a, F, w);
                    if (term_count(E) > cfg.term_limit) throw ConfigError("exact mode: expansion exceeds the term limit");
                    fine = all_zero(E);
                }
            } else {
                Form<Poly> F;
                std::vector<Form<Poly>> w;
                plan.symbolic<Rational>(s, F, w);
                if (term_count(w) > cfg.term_limit) throw ConfigError("exact mode: kernel expansion exceeds the term limit");
                if (!w.empty()) {
                    std::vector<Poly> X(target.X.begin(), target.X.end()), Y(target.Y.begin(), target.Y.end());
                    auto QX = p21ii_matrix(F, X, w), QY = p21ii_matrix(F, Y, w);
                    zeroX = zeroX && all_zero(QX);
                    zeroY = zeroY && all_zero(QY);
                    anti = anti && all_zero(added(QX, QY));
                }
            }
            if (!fine) {
                cert.verdict = Verdict::Falsified;
                cert.detail = "identity fails symbolically on stratum " + rec.subspace;
                cert.strata.push_back(rec);
                return cert;
            }
            rec.bound = 0;
        } else {
            rec.bound = stratum_bound(rec.degree, st.rank, trials, cfg.sample_size);
            bound += rec.bound;
        }
        cert.strata.push_back(rec);
    }
    cert.failure_bound = bound;

    if (target.family == Family::P21ii) {
        if (zeroX || zeroY) cert.kind = "P21-ii-zero";
        else if (anti) cert.kind = "P21-ii-antisym";
        else {
            // look for a sampled pair with q(X) q(Y) > 0
            Rng rng = Rng::substream(cfg.seed, {0xC0DE});
            for (const Sample* smp : seen) {
                if (smp->kernel.empty()) continue;
                auto QX = p21ii_matrix(smp->F, target.X, smp->kernel);
                auto QY = p21ii_matrix(smp->F, target.Y, smp->kernel);
                std::size_t k = smp->kernel.size();
                for (int attempt = 0; attempt < 200; ++attempt) {
                    std::vector<long> c(k, 0);
                    if (attempt < static_cast<int>(k)) c[attempt] = 1;
                    else
                        for (auto& x : c) x = rng.range(-3, 3);
                    Rational qx = quadratic_value(QX, c), qy = quadratic_value(QY, c);
                    if (sgn(qx) * sgn(qy) > 0) {
                        cert.verdict = Verdict::Falsified;
                        cert.detail = "F(J~X,X) F(J~Y,Y) = " + to_string(Rational(qx * qy)) + " > 0 (up to a positive factor) at F = " +
                                      to_string(smp->F) + ", rho = " + to_string(combine(smp->kernel, c));
                        return cert;
                    }
                }
            }
            cert.verdict = Verdict::Inconclusive;
            cert.detail = "neither q(X) = 0 nor q(X) + q(Y) = 0 holds identically";
            return cert;
        }
    }
    if (unsampled) {
        cert.verdict = Verdict::Inconclusive;
        cert.detail = "some stratum produced no admissible sample";
    } else if (unresolved) {
        cert.verdict = Verdict::Inconclusive;
        cert.detail = "a rank-drop component with real points could not be explored";
    } else if (!cert.nonempty) {
        cert.verdict = Verdict::Rejected;
        cert.detail = "no stable closed F with a nonzero compatible closed 3-form was sampled; the statement would be vacuous";
    } else {
        cert.verdict = Verdict::Certified;
        int covered = 0;
        for (const auto& r : cert.strata) covered += r.skipped ? 0 : 1;
        cert.detail = std::to_string(covered) + " strata checked";
    }
    return cert;
}

}  // namespace

Certificate certify_p21i(const LieAlgebra& g, const Form<Quadratic>& alpha, const CertifyConfig& cfg) {
    if (alpha.is_zero() || !alpha.is_homogeneous(1) || alpha.dim() != g.dim()) throw DomainError("alpha must be a nonzero 1-form on g");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    Plan plan(g, cfg);
    return run_p21(g, plan, {Family::P21i, alpha, {}, {}}, cfg, cfg.trials);
}

Certificate certify_p21ii(const LieAlgebra& g, const std::vector<Rational>& X, const std::vector<Rational>& Y,
                          const CertifyConfig& cfg) {
    auto nonzero = [](const std::vector<Rational>& v) { return std::any_of(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); }); };
    if (static_cast<int>(X.size()) != g.dim() || static_cast<int>(Y.size()) != g.dim() || !nonzero(X) || !nonzero(Y))
        throw DomainError("X and Y must be nonzero vectors of g");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    Plan plan(g, cfg);
    return run_p21(g, plan, {Family::P21ii, Form<Quadratic>(g.dim()), X, Y}, cfg, cfg.trials);
}

Certificate certify_p22(const LieAlgebra& g, const std::vector<Rational>& Xin) {
    LieAlgebra h = extend_by_line(g);
    int n = h.dim();
    std::vector<Rational> X = Xin;
    if (static_cast<int>(X.size()) == g.dim()) X.push_back(0);
    if (static_cast<int>(X.size()) != n || std::all_of(X.begin(), X.end(), [](const Rational& x) { return is_zero(x); }))
        throw DomainError("X must be a nonzero vector of g or g + R");
    Certificate cert;
    cert.kind = "P22";
    cert.algebra = g.name();
    cert.mode = "exact";
    cert.witness = {vector_text(X)};
    cert.coefficients = {coefficient_list(X)};
    cert.failure_bound = 0;
    auto z3 = closed_forms(h, 3);
    std::vector<Form<Rational>> B;
    for (const auto& phi : z3.basis) B.push_back(contract(X, phi));
    Form<Poly> generic(n);
    for (std::size_t i = 0; i < B.size(); ++i)
        for (const auto& [m, c] : B[i].terms()) generic.add(m, Poly::var("a" + std::to_string(i + 1)).scaled(c));
    cert.degenerate_form = to_string(generic);
    std::size_t k = B.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Form<Rational> bij = wedge(B[i], B[j]);
            if (bij.is_zero()) continue;
            for (std::size_t l = j; l < k; ++l) {
                if (wedge(bij, B[l]).is_zero()) continue;
                // the cubic is nonzero; exhibit a closed phi with (iota_X phi)^3 != 0
                Rng rng = Rng::substream(0, {i, j, l});
                for (int attempt = 0; attempt < 1000; ++attempt) {
                    Form<Rational> phi(n), b(n);
                    for (std::size_t q = 0; q < k; ++q) {
                        long c = attempt == 0 ? (q == i || q == j || q == l) : rng.range(-2, 2);
                        if (!c) continue;
                        phi += z3.basis[q].scaled(Rational(c));
                        b += B[q].scaled(Rational(c));
                    }
                    Form<Rational> cube = wedge(b, wedge(b, b));
                    if (!cube.is_zero()) {
                        cert.verdict = Verdict::Falsified;
                        cert.detail = "(iota_X phi)^3 = " + to_string(cube) + " for closed phi = " + to_string(phi);
                        return cert;
                    }
                }
                cert.verdict = Verdict::Falsified;
                cert.detail = "(iota_X phi)^3 is a nonzero cubic in phi";
                return cert;
            }
        }
    cert.verdict = Verdict::Certified;
    cert.detail = "(iota_X phi)^3 vanishes identically on Z^3 (dimension " + std::to_string(k) + ")";
    return cert;
}

std::optional<Certificate> search_witness(const LieAlgebra& g, const SearchBudget& budget, const CertifyConfig& cfg) {
    int n = g.dim();
    int used = 0;
    auto spend = [&]() { return used++ < budget.candidates; };
    std::vector<std::vector<Rational>> vectors;
    for (int i = 1; i <= n; ++i) vectors.push_back(basis_vector<Rational>(n, i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (long ci : {1L, 2L, -1L, -2L})
                for (long cj : {1L, 2L, -1L, -2L}) {
                    if (ci < 0) continue;  // X and -X give the same test
                    auto v = basis_vector<Rational>(n, i, Rational(ci));
                    v[j - 1] = cj;
                    vectors.push_back(v);
                }

    for (const auto& X : vectors) {
        if (!spend()) return std::nullopt;
        auto c = certify_p22(g, X);
        if (c.valid()) return c;
    }

    Plan plan(g, cfg);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < std::size_t(n); ++i) pairs.emplace_back(i, i);
    for (std::size_t i = 0; i < std::size_t(n); ++i)
        for (std::size_t j = i + 1; j < std::size_t(n); ++j) pairs.emplace_back(i, j);
    for (std::size_t i = n; i < vectors.size(); ++i) pairs.emplace_back(i, i);
    for (auto [i, j] : pairs) {
        if (!spend()) return std::nullopt;
        P21Target t{Family::P21ii, Form<Quadratic>(n), vectors[i], vectors[j]};
        if (!run_p21(g, plan, t, cfg, budget.screen_trials).valid()) continue;
        auto full = run_p21(g, plan, t, cfg, cfg.trials);
        if (full.valid()) return full;
    }

    std::vector<Form<Quadratic>> covectors;
    for (const auto& v : vectors) {
        Form<Quadratic> a(n);
        for (int i = 0; i < n; ++i) a.add(index_mask(i + 1), Quadratic(v[i]));
        covectors.push_back(a);
    }
    if (budget.sqrt3) {
        Quadratic r3 = Quadratic::sqrt_of(3);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                for (const Quadratic& c : {Quadratic(2) + r3, Quadratic(2) - r3}) {
                    Form<Quadratic> a(n);
                    a.add(index_mask(i), c);
                    a.add(index_mask(j), Quadratic(1));
                    covectors.push_back(a);
                }
            }
    }
    for (const auto& a : covectors) {
        if (!spend()) return std::nullopt;
        auto c = run_p21(g, plan, {Family::P21i, a, {}, {}}, cfg, budget.screen_trials);
        if (!c.valid()) continue;
        auto full = run_p21(g, plan, {Family::P21i, a, {}, {}}, cfg, cfg.trials);
        if (full.valid()) return full;
    }
    return std::nullopt;
}

std::string to_json_text(const Certificate& c) {
    nlohmann::ordered_json j;
    j["kind"] = c.kind;
    j["algebra"] = c.algebra;
    j["witness"] = c.witness;
    j["coefficients"] = c.coefficients;
    j["field"] = c.field;
    j["mode"] = c.mode;
    if (c.mode == "randomized") {
        j["trials"] = c.trials;
        j["seed"] = c.seed;
        j["sample_size"] = c.sample_size;
        j["degree_bound"] = c.degree_bound;
    }
    j["failure_bound"] = to_string(c.failure_bound);
    if (c.nonempty) j["nonempty"] = {{"F", to_string(c.nonempty->F)}, {"rho", to_string(c.nonempty->rho)}};
    if (!c.degenerate_form.empty()) j["degenerate_form"] = c.degenerate_form;
    if (!c.strata.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& s : c.strata) {
            nlohmann::ordered_json r;
            r["subspace"] = s.subspace;
            r["dimension"] = s.dimension;
            if (s.skipped) {
                r["skipped"] = "F^3 vanishes identically";
            } else {
                r["rank"] = s.rank;
                r["kernel"] = s.kernel;
                r["stability"] = s.stability + " != 0";
                r["degree"] = s.degree;
                r["accepted"] = s.accepted;
                r["rejected"] = s.rejected;
                r["bound"] = to_string(s.bound);
            }
            if (!s.residual.empty()) r["residual"] = s.residual;
            arr.push_back(r);
        }
        j["strata"] = arr;
    }
    j["verdict"] = to_string(c.verdict);
    j["detail"] = c.detail;
    return j.dump(2);
}

}  // namespace shf
