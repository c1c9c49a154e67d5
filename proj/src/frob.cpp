#include "orb/frob.hpp"

#include <algorithm>
#include <numeric>

#include "orb/error.hpp"

namespace orb {

namespace {

size_t idx3(int n, int a, int b, int c) { return (static_cast<size_t>(a) * n + b) * n + c; }

std::vector<Scalar> derive_delta(int n, const std::vector<Scalar>& mu, const Matrix& ginv) {
    std::vector<Scalar> d(static_cast<size_t>(n) * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Scalar& m = mu[idx3(n, a, b, c)];
                if (m.is_zero()) continue;
                for (int e = 0; e < n; ++e)
                    if (!ginv(b, e).is_zero()) d[idx3(n, a, c, e)] += m * ginv(b, e);
            }
    return d;
}

}  // namespace

bool FrobeniusData::is_exact() const {
    auto ex = [](const std::vector<Scalar>& v) {
        return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
    };
    return ex(mu) && ex(eta) && ex(eps) && ex(delta);
}

Matrix pairing(const FrobeniusData& a) {
    const int n = a.dim;
    Matrix g(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (!a.m(x, y, z).is_zero()) g(x, y) += a.m(x, y, z) * a.eps[z];
    return g;
}

Matrix inverse_pairing(const FrobeniusData& a, double tol) {
    try {
        return inverse(pairing(a), tol);
    } catch (const Error& e) {
        if (e.code() == "Singular") fail("DegeneratePairing", "eps(mu(-,-)) is degenerate");
        throw;
    }
}

FrobeniusData make_frobenius(int dim, std::vector<Scalar> mu, std::vector<Scalar> eta, std::vector<Scalar> eps,
                             std::optional<std::vector<Scalar>> delta, std::vector<std::string> basis, double tol) {
    if (dim < 1) fail("DimensionMismatch", "algebra dimension must be positive");
    const size_t n3 = static_cast<size_t>(dim) * dim * dim;
    if (mu.size() != n3) fail("DimensionMismatch", "mu must have dim^3 entries");
    if (eta.size() != static_cast<size_t>(dim)) fail("DimensionMismatch", "eta must have dim entries");
    if (eps.size() != static_cast<size_t>(dim)) fail("DimensionMismatch", "eps must have dim entries");
    if (delta && delta->size() != n3) fail("DimensionMismatch", "delta must have dim^3 entries");
    if (basis.empty())
        for (int i = 0; i < dim; ++i) basis.push_back("e" + std::to_string(i));
    if (basis.size() != static_cast<size_t>(dim)) fail("DimensionMismatch", "one basis label per dimension");
    FrobeniusData a;
    a.dim = dim;
    a.basis = std::move(basis);
    a.mu = std::move(mu);
    a.eta = std::move(eta);
    a.eps = std::move(eps);
    Matrix ginv = inverse_pairing(a, tol);
    if (delta) {
        a.delta = std::move(*delta);
        a.delta_given = true;
    } else {
        a.delta = derive_delta(dim, a.mu, ginv);
    }
    return a;
}

Report check_frobenius_axioms(const FrobeniusData& a, double tol) {
    const int n = a.dim;
    Matrix ginv = inverse_pairing(a, tol);
    Report rep;
    auto kd = [](int x, int y) { return Scalar(x == y ? 1 : 0); };

    Residual assoc("associativity"), unit("unit"), coassoc("coassociativity"), counit("counit"),
        frob("frobenius"), sym("symmetric"), sep("delta_separable");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int w = 0; w < n; ++w) {
                    Scalar l, r;
                    for (int k = 0; k < n; ++k) {
                        l += a.m(x, y, k) * a.m(k, z, w);
                        r += a.m(y, z, k) * a.m(x, k, w);
                    }
                    assoc.add(l, r, {x, y, z, w});
                    // (Delta (x) id) Delta vs (id (x) Delta) Delta on e_x, output e_y e_z e_w
                    Scalar cl, cr;
                    for (int k = 0; k < n; ++k) {
                        cl += a.d(x, k, w) * a.d(k, y, z);
                        cr += a.d(x, y, k) * a.d(k, z, w);
                    }
                    coassoc.add(cl, cr, {x, y, z, w});
                    // Delta mu against both mixed composites on e_x (x) e_y -> e_z (x) e_w
                    Scalar dm, f1, f2;
                    for (int k = 0; k < n; ++k) {
                        dm += a.m(x, y, k) * a.d(k, z, w);
                        f1 += a.d(x, z, k) * a.m(k, y, w);
                        f2 += a.d(y, k, w) * a.m(x, k, z);
                    }
                    frob.add(dm, f1, {x, y, z, w});
                    frob.add(dm, f2, {x, y, z, w});
                }
    Matrix g = pairing(a);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Scalar ul, ur, el, er, s;
            for (int k = 0; k < n; ++k) {
                ul += a.eta[k] * a.m(k, x, y);
                ur += a.eta[k] * a.m(x, k, y);
                el += a.eps[k] * a.d(x, k, y);
                er += a.eps[k] * a.d(x, y, k);
                for (int l = 0; l < n; ++l) s += a.d(x, k, l) * a.m(k, l, y);
            }
            unit.add(ul, kd(x, y), {x, y});
            unit.add(ur, kd(x, y), {x, y});
            counit.add(el, kd(x, y), {x, y});
            counit.add(er, kd(x, y), {x, y});
            sym.add(g(x, y), g(y, x), {x, y});
            sep.add(s, kd(x, y), {x, y});
        }
    for (auto* r : {&assoc, &unit, &coassoc, &counit, &frob, &sym, &sep}) rep.records.push_back(r->finish(tol));
    if (a.delta_given) {
        Residual cons("delta_consistent");
        auto derived = derive_delta(n, a.mu, ginv);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) cons.add(a.d(x, y, z), derived[idx3(n, x, y, z)], {x, y, z});
        rep.records.push_back(cons.finish(tol));
    }
    // mu o Delta as a multiple of the identity, for diagnostics.
    Scalar trace;
    for (int x = 0; x < n; ++x)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) trace += a.d(x, k, l) * a.m(k, l, x);
    for (auto& r : rep.records)
        if (r.name == "delta_separable") r.note = "tr(mu o Delta)/dim = " + (trace / Scalar(n)).str();
    return rep;
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
    if (n < 1) fail("BadParams", "cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

std::vector<std::vector<int>> symmetric_group_table(int k) {
    if (k < 1 || k > 5) fail("BadParams", "symmetric group degree must be in 1..5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int n = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> c(k);
            for (int x = 0; x < k; ++x) c[x] = perms[i][perms[j][x]];
            t[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

FrobeniusData group_algebra(const std::vector<std::vector<int>>& table, Mode mode, int characteristic) {
    const int n = static_cast<int>(table.size());
    if (n == 0) fail("NotAGroup", "empty table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) fail("NotAGroup", "table is not square");
        for (int x : row)
            if (x < 0 || x >= n) fail("NotAGroup", "table entry out of range");
    }
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j) ok = ok && table[i][j] == j && table[j][i] == j;
        if (ok) e = i;
    }
    if (e < 0) fail("NotAGroup", "no identity element");
    for (int i = 0; i < n; ++i) {
        bool inv = false;
        for (int j = 0; j < n; ++j) inv = inv || (table[i][j] == e && table[j][i] == e);
        if (!inv) fail("NotAGroup", "element " + std::to_string(i) + " has no inverse");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]]) fail("NotAGroup", "table is not associative");
    }
    if (characteristic < 0) fail("BadCharacteristic", "characteristic must be 0 or a prime");
    if (characteristic > 0) {
        if (n % characteristic == 0)
            fail("BadCharacteristic", "characteristic " + std::to_string(characteristic) + " divides |G|");
        fail("UnsupportedCharacteristic", "only characteristic 0 scalars are implemented");
    }
    const size_t n3 = static_cast<size_t>(n) * n * n;
    std::vector<Scalar> mu(n3), eta(n), eps(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mu[idx3(n, i, j, table[i][j])] = Scalar(1);
    eta[e] = Scalar(1);
    eps[e] = Scalar(n);
    std::vector<std::string> basis;
    for (int i = 0; i < n; ++i) basis.push_back("g" + std::to_string(i));
    return to_mode(make_frobenius(n, mu, eta, eps, std::nullopt, basis), mode);
}

FrobeniusData matrix_algebra(int k, Mode mode) {
    if (k < 1) fail("BadParams", "matrix size must be positive");
    const int n = k * k;
    auto id = [k](int i, int j) { return i * k + j; };
    std::vector<Scalar> mu(static_cast<size_t>(n) * n * n), eta(n), eps(n);
    std::vector<std::string> basis;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            basis.push_back("E" + std::to_string(i) + std::to_string(j));
            for (int l = 0; l < k; ++l) mu[idx3(n, id(i, j), id(j, l), id(i, l))] = Scalar(1);
        }
    for (int i = 0; i < k; ++i) {
        eta[id(i, i)] = Scalar(1);
        eps[id(i, i)] = Scalar(k);
    }
    return to_mode(make_frobenius(n, mu, eta, eps, std::nullopt, basis), mode);
}

FrobeniusData trivial_algebra(Mode mode) {
    return to_mode(make_frobenius(1, {Scalar(1)}, {Scalar(1)}, {Scalar(1)}, std::nullopt, {"1"}), mode);
}

FrobeniusData rescale_counit(const FrobeniusData& a, const Scalar& lambda) {
    std::vector<Scalar> eps = a.eps;
    for (auto& x : eps) x *= lambda;
    return make_frobenius(a.dim, a.mu, a.eta, eps, std::nullopt, a.basis);
}

FrobeniusData opposite(const FrobeniusData& a) {
    const int n = a.dim;
    std::vector<Scalar> mu(a.mu.size()), delta(a.delta.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                mu[idx3(n, x, y, z)] = a.m(y, x, z);
                delta[idx3(n, x, y, z)] = a.d(x, z, y);
            }
    // A user-supplied coproduct is replaced by its co-opposite; a derived one
    // is derived afresh from the opposite pairing.
    std::optional<std::vector<Scalar>> given;
    if (a.delta_given) given = std::move(delta);
    return make_frobenius(n, mu, a.eta, a.eps, given, a.basis);
}

FrobeniusData direct_sum(const FrobeniusData& a, const FrobeniusData& b) {
    const int n = a.dim + b.dim;
    std::vector<Scalar> mu(static_cast<size_t>(n) * n * n), delta(mu.size()), eta(n), eps(n);
    auto copy = [&](const FrobeniusData& x, int off) {
        for (int i = 0; i < x.dim; ++i) {
            eta[off + i] = x.eta[i];
            eps[off + i] = x.eps[i];
            for (int j = 0; j < x.dim; ++j)
                for (int k = 0; k < x.dim; ++k) {
                    mu[idx3(n, off + i, off + j, off + k)] = x.m(i, j, k);
                    delta[idx3(n, off + i, off + j, off + k)] = x.d(i, j, k);
                }
        }
    };
    copy(a, 0);
    copy(b, a.dim);
    std::vector<std::string> basis;
    for (const auto& s : a.basis) basis.push_back("a." + s);
    for (const auto& s : b.basis) basis.push_back("b." + s);
    FrobeniusData s = make_frobenius(n, mu, eta, eps, std::nullopt, basis);
    if (a.delta_given || b.delta_given) {
        s.delta = delta;
        s.delta_given = true;
    }
    return s;
}

FrobeniusData to_mode(const FrobeniusData& a, Mode mode) {
    if (mode == Mode::Exact) return a;
    FrobeniusData b = a;
    for (auto* v : {&b.mu, &b.eta, &b.eps, &b.delta})
        for (auto& x : *v) x = x.to_float();
    return b;
}

bool is_commutative(const FrobeniusData& a, double tol) {
    for (int x = 0; x < a.dim; ++x)
        for (int y = 0; y < a.dim; ++y)
            for (int z = 0; z < a.dim; ++z) {
                double d = distance(a.m(x, y, z), a.m(y, x, z));
                if (a.m(x, y, z).is_exact() && a.m(y, x, z).is_exact() ? d != 0.0 : d > tol) return false;
            }
    return true;
}

}  // namespace orb
