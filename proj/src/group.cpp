#include "dwlink/group.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace dwlink {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

cplx unit_root(long long num, long long den) {
    // e^{2*pi*i*num/den}
    double a = 2.0 * kPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
}

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<int> mul_table,
                         std::vector<std::string> labels)
    : name_(std::move(name)), mul_(std::move(mul_table)), labels_(std::move(labels)) {
    double nd = std::sqrt(static_cast<double>(mul_.size()));
    n_ = static_cast<int>(std::lround(nd));
    if (n_ <= 0 || static_cast<size_t>(n_) * n_ != mul_.size())
        throw std::invalid_argument("multiplication table is not square");
    for (int v : mul_)
        if (v < 0 || v >= n_) throw std::invalid_argument("table entry out of range");

    // locate identity
    e_ = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            e_ = e;
            break;
        }
    }
    if (e_ < 0) throw std::invalid_argument("table has no identity element");

    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == e_ && mul(b, a) == e_) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw std::invalid_argument("element without inverse");
    }

    if (labels_.empty()) {
        labels_.resize(n_);
        for (int a = 0; a < n_; ++a) labels_[a] = "g" + std::to_string(a);
    }
    if (static_cast<int>(labels_.size()) != n_)
        throw std::invalid_argument("label count mismatch");
    validate();
}

void FiniteGroup::validate() const {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("multiplication table not associative");
}

int FiniteGroup::power(int a, long long k) const {
    int base = k >= 0 ? a : inv(a);
    long long m = k >= 0 ? k : -k;
    int acc = e_;
    for (long long i = 0; i < m; ++i) acc = mul(acc, base);
    return acc;
}

namespace {

GroupPtr make_cyclic(int n) {
    std::vector<int> t(n * n);
    std::vector<std::string> lab(n);
    for (int i = 0; i < n; ++i) {
        lab[i] = i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i));
        for (int j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
    }
    return std::make_shared<FiniteGroup>("Z" + std::to_string(n), std::move(t), std::move(lab));
}

// Elements ordered e, a, ..., a^{n-1}, b, ab, ..., a^{n-1} b.
GroupPtr make_dihedral(int n) {
    int N = 2 * n;
    auto idx = [n](int rot, int ref) { return (ref ? n : 0) + ((rot % n) + n) % n; };
    std::vector<int> t(N * N);
    for (int i = 0; i < N; ++i) {
        int ri = i % n, fi = i / n;
        for (int j = 0; j < N; ++j) {
            int rj = j % n, fj = j / n;
            // (a^ri b^fi)(a^rj b^fj): move b past a^rj.
            int rot = fi ? ri - rj : ri + rj;
            t[i * N + j] = idx(rot, fi ^ fj);
        }
    }
    std::vector<std::string> lab(N);
    for (int i = 0; i < N; ++i) {
        int r = i % n, f = i / n;
        std::string s;
        if (r == 1)
            s = "a";
        else if (r > 1)
            s = "a^" + std::to_string(r);
        if (f) s += "b";
        if (s.empty()) s = "e";
        lab[i] = s;
    }
    return std::make_shared<FiniteGroup>("D" + std::to_string(n), std::move(t), std::move(lab));
}

GroupPtr make_symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int N = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> lookup;
    for (int i = 0; i < N; ++i) lookup[perms[i]] = i;
    std::vector<int> t(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            std::vector<int> c(n);
            for (int k = 0; k < n; ++k) c[k] = perms[i][perms[j][k]];
            t[i * N + j] = lookup[c];
        }
    std::vector<std::string> lab(N);
    for (int i = 0; i < N; ++i) {
        std::string s;
        for (int k = 0; k < n; ++k) s += static_cast<char>('1' + perms[i][k]);
        lab[i] = s;
    }
    return std::make_shared<FiniteGroup>("S" + std::to_string(n), std::move(t), std::move(lab));
}

GroupPtr make_quaternion() {
    // 1, -1, i, -i, j, -j, k, -k
    auto sgn = [](int x) { return x & 1; };
    auto axis = [](int x) { return x >> 1; }; // 0:1, 1:i, 2:j, 3:k
    auto enc = [](int ax, int s) { return ax * 2 + s; };
    // quaternion unit products: table over axes with signs
    static const int ax_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> t(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int ax = ax_mul[axis(x)][axis(y)];
            int s = sgn(x) ^ sgn(y) ^ sg_mul[axis(x)][axis(y)];
            t[x * 8 + y] = enc(ax, s);
        }
    std::vector<std::string> lab = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return std::make_shared<FiniteGroup>("Q8", std::move(t), std::move(lab));
}

} // namespace

GroupPtr group_from_table_text(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    int n = 0;
    if (!(in >> n) || n <= 0 || n > 64)
        throw std::invalid_argument("group table: bad order line (need 1 <= N <= 64)");
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (auto& v : t)
        if (!(in >> v)) throw std::invalid_argument("group table: truncated entries");
    return std::make_shared<FiniteGroup>(name, std::move(t));
}

GroupPtr build_named_group(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream f(spec.substr(5));
        if (!f) throw std::invalid_argument("cannot open group table file: " + spec.substr(5));
        std::stringstream ss;
        ss << f.rdbuf();
        return group_from_table_text(ss.str(), spec.substr(5));
    }
    auto starts = [&](char c) { return !spec.empty() && spec[0] == c; };
    auto tail_int = [&]() -> std::optional<int> {
        if (spec.size() < 2) return std::nullopt;
        for (size_t i = 1; i < spec.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(spec[i]))) return std::nullopt;
        return std::stoi(spec.substr(1));
    };
    if (starts('Z')) {
        auto n = tail_int();
        if (n && *n >= 1 && *n <= 64) return make_cyclic(*n);
    } else if (starts('D')) {
        auto n = tail_int();
        if (n && *n >= 1 && 2 * *n <= 64) return make_dihedral(*n);
    } else if (spec == "S3") {
        return make_symmetric(3);
    } else if (spec == "S4") {
        return make_symmetric(4);
    } else if (spec == "Q8") {
        return make_quaternion();
    }
    throw std::invalid_argument("unknown group spec: " + spec);
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
    int n = g.order();
    std::vector<int> cls(n, -1);
    std::vector<ConjugacyClass> out;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        ConjugacyClass c;
        c.representative = x;
        std::map<int, int> orbit; // member -> witness
        for (int a = 0; a < n; ++a) orbit.emplace(g.conj(a, x), a);
        for (auto& [y, w] : orbit) {
            cls[y] = static_cast<int>(out.size());
            c.members.push_back(y);
            c.witness.push_back(w);
        }
        // centralizer subgroup of the representative
        std::vector<int> cen;
        for (int a = 0; a < n; ++a)
            if (g.commute(a, x)) cen.push_back(a);
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < cen.size(); ++i) pos[cen[i]] = static_cast<int>(i);
        int m = static_cast<int>(cen.size());
        std::vector<int> t(m * m);
        std::vector<std::string> lab(m);
        for (int i = 0; i < m; ++i) {
            lab[i] = g.label(cen[i]);
            for (int j = 0; j < m; ++j) {
                int p = pos[g.mul(cen[i], cen[j])];
                if (p < 0) throw std::logic_error("centralizer not closed");
                t[i * m + j] = p;
            }
        }
        c.centralizer = std::make_shared<FiniteGroup>(
            "C(" + g.label(x) + ")<" + g.name() + ">", std::move(t), std::move(lab));
        c.embed = std::move(cen);
        if (static_cast<int>(c.members.size()) * c.centralizer->order() != n)
            throw std::logic_error("orbit-stabilizer mismatch");
        out.push_back(std::move(c));
    }
    return out;
}

void validate_irrep(const FiniteGroup& g, const UnitaryIrrep& rep, double tol) {
    int n = g.order();
    cmat id = cmat::Identity(rep.dim, rep.dim);
    for (int a = 0; a < n; ++a) {
        if (!near(rep.matrices[a] * rep.matrices[a].adjoint(), id, tol))
            throw numeric_error("irrep matrix not unitary");
        for (int b = 0; b < n; ++b)
            if (!near(rep.matrices[a] * rep.matrices[b], rep.matrices[g.mul(a, b)], tol))
                throw numeric_error("irrep is not a homomorphism");
    }
    cplx s = 0;
    for (int a = 0; a < n; ++a) s += rep.character[a] * std::conj(rep.character[a]);
    if (std::abs(s - cplx(n, 0)) > 1e-6 * n) throw numeric_error("representation not irreducible");
}

namespace {

UnitaryIrrep from_matrices(std::vector<cmat> mats) {
    UnitaryIrrep r;
    r.dim = static_cast<int>(mats[0].rows());
    r.matrices = std::move(mats);
    r.character.resize(r.matrices.size());
    for (size_t i = 0; i < r.matrices.size(); ++i) r.character[i] = r.matrices[i].trace();
    return r;
}

// Detect a cyclic group by finding a generator; returns its index or -1.
int find_generator(const FiniteGroup& g) {
    for (int a = 0; a < g.order(); ++a) {
        int x = a, cnt = 1;
        while (x != g.identity()) {
            x = g.mul(x, a);
            ++cnt;
        }
        if (cnt == g.order()) return a;
    }
    return -1;
}

std::vector<UnitaryIrrep> cyclic_irreps(const FiniteGroup& g, int gen) {
    int n = g.order();
    std::vector<int> exponent(n, -1); // element -> k with element = gen^k
    int x = g.identity();
    for (int k = 0; k < n; ++k) {
        exponent[x] = k;
        x = g.mul(x, gen);
    }
    std::vector<UnitaryIrrep> out;
    for (int t = 0; t < n; ++t) {
        std::vector<cmat> mats(n);
        for (int a = 0; a < n; ++a) {
            cmat m(1, 1);
            m(0, 0) = unit_root(static_cast<long long>(t) * exponent[a], n);
            mats[a] = m;
        }
        out.push_back(from_matrices(std::move(mats)));
    }
    return out;
}

struct DihedralShape {
    int n;          // rotation order
    int a, b;       // generator element indices
};

// Detect a dihedral presentation <a,b | a^n, b^2, (ab)^n>; deterministic pick.
std::optional<DihedralShape> find_dihedral(const FiniteGroup& g) {
    int N = g.order();
    if (N % 2 != 0 || N < 2) return std::nullopt;
    int n = N / 2;
    auto elem_order = [&](int a) {
        int x = a, cnt = 1;
        while (x != g.identity()) {
            x = g.mul(x, a);
            ++cnt;
        }
        return cnt;
    };
    for (int a = 0; a < N; ++a) {
        if (elem_order(a) != n) continue;
        std::vector<bool> in_rot(N, false);
        int x = g.identity();
        for (int k = 0; k < n; ++k) {
            in_rot[x] = true;
            x = g.mul(x, a);
        }
        for (int b = 0; b < N; ++b) {
            if (in_rot[b] || elem_order(b) != 2) continue;
            if (g.conj(b, a) == g.inv(a)) return DihedralShape{n, a, b};
        }
        break; // first order-n element suffices; all choices are conjugate
    }
    return std::nullopt;
}

std::vector<UnitaryIrrep> dihedral_irreps(const FiniteGroup& g, const DihedralShape& sh) {
    int N = g.order(), n = sh.n;
    // decompose every element as a^r b^f
    std::vector<int> rpow(N, -1), fpow(N, -1);
    int x = g.identity();
    for (int r = 0; r < n; ++r) {
        rpow[x] = r;
        fpow[x] = 0;
        int y = g.mul(x, sh.b);
        rpow[y] = r;
        fpow[y] = 1;
        x = g.mul(x, sh.a);
    }
    std::vector<UnitaryIrrep> out;
    auto linear = [&](bool sgn_a, bool sgn_b) {
        std::vector<cmat> mats(N);
        for (int e = 0; e < N; ++e) {
            cmat m(1, 1);
            double v = 1.0;
            if (sgn_a && (rpow[e] % 2)) v = -v;
            if (sgn_b && fpow[e]) v = -v;
            m(0, 0) = v;
            mats[e] = m;
        }
        out.push_back(from_matrices(std::move(mats)));
    };
    linear(false, false);
    linear(false, true);
    if (n % 2 == 0) {
        linear(true, false);
        linear(true, true);
    }
    int two_dim = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
    for (int r = 1; r <= two_dim; ++r) {
        std::vector<cmat> mats(N);
        for (int e = 0; e < N; ++e) {
            cmat rot = cmat::Zero(2, 2);
            rot(0, 0) = unit_root(static_cast<long long>(r) * rpow[e], n);
            rot(1, 1) = unit_root(-static_cast<long long>(r) * rpow[e], n);
            if (fpow[e]) {
                cmat flip = cmat::Zero(2, 2);
                flip(0, 1) = 1;
                flip(1, 0) = 1;
                rot = rot * flip;
            }
            mats[e] = rot;
        }
        out.push_back(from_matrices(std::move(mats)));
    }
    return out;
}

// Fallback: split the left regular representation along the eigenspaces of a
// random Hermitian operator from its commutant (right translations).
std::vector<UnitaryIrrep> regular_rep_irreps(const FiniteGroup& g, std::uint64_t seed) {
    int n = g.order();
    for (int attempt = 0; attempt < 8; ++attempt) {
        DetRng rng(hash_key(g.name() + "#irrep", seed + 0x9e37 * attempt + 1));
        cmat h = cmat::Zero(n, n);
        for (int a = 0; a < n; ++a) {
            cplx c = rng.next_cplx_normal();
            // right translation by a: e_k -> e_{k a^{-1}}
            for (int k = 0; k < n; ++k) {
                int dst = g.mul(k, g.inv(a));
                h(dst, k) += c;
                h(k, dst) += std::conj(c);
            }
        }
        Eigen::SelfAdjointEigenSolver<cmat> es(h);
        if (es.info() != Eigen::Success) continue;
        const auto& ev = es.eigenvalues();
        double scale = std::max(1.0, std::abs(ev(n - 1) - ev(0)));

        std::vector<std::pair<int, int>> clusters; // [begin, end)
        int begin = 0;
        for (int i = 1; i <= n; ++i) {
            if (i == n || ev(i) - ev(i - 1) > 1e-7 * scale) {
                clusters.emplace_back(begin, i);
                begin = i;
            }
        }

        std::vector<UnitaryIrrep> found;
        bool ok = true;
        for (auto [b, e] : clusters) {
            int d = e - b;
            cmat q = es.eigenvectors().middleCols(b, d);
            std::vector<cmat> mats(n);
            for (int a = 0; a < n; ++a) {
                cmat reg = cmat::Zero(n, n);
                for (int k = 0; k < n; ++k) reg(g.mul(a, k), k) = 1.0;
                mats[a] = q.adjoint() * reg * q;
            }
            UnitaryIrrep r = from_matrices(std::move(mats));
            try {
                validate_irrep(g, r, 1e-7);
            } catch (const numeric_error&) {
                ok = false;
                break;
            }
            found.push_back(std::move(r));
        }
        if (!ok) continue;

        // dedupe by character
        std::vector<UnitaryIrrep> uniq;
        for (auto& r : found) {
            bool dup = false;
            for (const auto& u : uniq) {
                double dist = 0;
                for (int a = 0; a < n; ++a) dist += std::abs(r.character[a] - u.character[a]);
                if (dist < 1e-5) {
                    dup = true;
                    break;
                }
            }
            if (!dup) uniq.push_back(std::move(r));
        }
        int sumsq = 0;
        for (const auto& u : uniq) sumsq += u.dim * u.dim;
        if (sumsq == n) return uniq;
    }
    throw numeric_error("failed to decompose regular representation of " + g.name() +
                        "; retry with a different seed");
}

std::vector<long long> char_sort_key(const UnitaryIrrep& r) {
    std::vector<long long> key;
    key.reserve(2 * r.character.size());
    for (cplx c : r.character) {
        key.push_back(-std::llround(c.real() * 1e6)); // descending real part
        key.push_back(std::llround(c.imag() * 1e6));
    }
    return key;
}

} // namespace

std::vector<UnitaryIrrep> irreps(const FiniteGroup& g, std::uint64_t seed) {
    std::vector<UnitaryIrrep> out;
    if (int gen = find_generator(g); gen >= 0) {
        out = cyclic_irreps(g, gen);
    } else if (auto sh = find_dihedral(g)) {
        out = dihedral_irreps(g, *sh);
    } else {
        out = regular_rep_irreps(g, seed);
    }
    for (const auto& r : out) validate_irrep(g, r);
    int sumsq = 0;
    for (const auto& r : out) sumsq += r.dim * r.dim;
    if (sumsq != g.order()) throw numeric_error("irrep dimension sum check failed");
    std::stable_sort(out.begin(), out.end(), [](const UnitaryIrrep& x, const UnitaryIrrep& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        return char_sort_key(x) < char_sort_key(y);
    });
    return out;
}

} // namespace dwlink
