#include "spinpoly/hilbert.hpp"

#include <algorithm>

namespace spinpoly {

int fusion_trinode(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t level) {
    if (a < 0 || b < 0 || c < 0)
        return 0;
    const std::int64_t sum = a + b + c;
    if (sum & 1)
        return 0;
    if (2 * std::max(a, std::max(b, c)) > sum)
        return 0;
    if (sum > 2 * level)
        return 0;
    return 1;
}

std::size_t PsiKeyHash::operator()(const PsiKey& k) const {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(k.g));
    mix(static_cast<std::uint64_t>(k.level));
    for (std::int64_t v : k.r)
        mix(static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
}

std::optional<BigInt> MemoCache::lookup(const PsiKey& key) const {
    std::lock_guard lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

void MemoCache::store(const PsiKey& key, const BigInt& value) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = map_.emplace(key, value);
    if (!inserted && it->second != value)
        throw IntegrityError("memo cache saw two different values for one key");
}

std::size_t MemoCache::size() const {
    std::lock_guard lock(mutex_);
    return map_.size();
}

std::vector<std::pair<PsiKey, BigInt>> MemoCache::snapshot() const {
    std::lock_guard lock(mutex_);
    std::vector<std::pair<PsiKey, BigInt>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.g, a.first.level, a.first.r) <
               std::tie(b.first.g, b.first.level, b.first.r);
    });
    return out;
}

namespace {

PsiKey canonical_key(int g, std::span<const std::int64_t> r, std::int64_t level) {
    PsiKey key;
    key.g = g;
    key.level = level;
    for (std::int64_t v : r)
        if (v != 0)
            key.r.push_back(v);
    std::sort(key.r.begin(), key.r.end());
    return key;
}

// Direct count on the caterpillar with signature (g, n); infeasible
// signatures are padded with vacuum (zero-weight) leaves first.
BigInt psi_enumerate(int g, std::vector<std::int64_t> r, std::int64_t level,
                     const EnumLimits& limits) {
    int n = static_cast<int>(r.size());
    int min_n = 0;
    if (g == 0)
        min_n = 3;
    else if (g == 1)
        min_n = 1;
    while (n < min_n) {
        r.push_back(0);
        ++n;
    }
    TrivalentGraph graph = build_caterpillar(g, n);
    PolytopeSpec spec(std::move(graph), level, std::move(r));
    return BigInt(count_lattice_points(spec, 1, false, limits));
}

BigInt psi_recurse(int g, const PsiKey& key, MemoCache& cache, const EnumLimits& limits) {
    if (auto hit = cache.lookup(key))
        return *hit;
    // Every admissible weight is bounded by the level.
    if (!key.r.empty() && key.r.back() > key.level) {
        cache.store(key, 0);
        return 0;
    }
    BigInt result;
    const std::size_t n = key.r.size();
    if (g == 0 && n <= 3) {
        std::int64_t a = n > 0 ? key.r[0] : 0;
        std::int64_t b = n > 1 ? key.r[1] : 0;
        std::int64_t c = n > 2 ? key.r[2] : 0;
        result = fusion_trinode(a, b, c, key.level);
    } else if (g >= 1 && n <= 1) {
        result = psi_enumerate(g, key.r, key.level, limits);
    } else {
        // Split off the two largest weights through a trinode.
        const std::int64_t r1 = key.r[n - 1];
        const std::int64_t r2 = key.r[n - 2];
        std::vector<std::int64_t> rest(key.r.begin(), key.r.end() - 2);
        rest.push_back(0); // placeholder for the summation weight
        for (std::int64_t a = 0; a <= key.level; ++a) {
            const int f = fusion_trinode(a, r1, r2, key.level);
            if (!f)
                continue;
            rest.back() = a;
            PsiKey child = canonical_key(g, rest, key.level);
            result += psi_recurse(g, child, cache, limits);
        }
    }
    cache.store(key, result);
    return result;
}

} // namespace

BigInt psi(int g, int n, std::span<const std::int64_t> r, std::int64_t level, PsiMethod method,
           MemoCache* cache, const EnumLimits& limits) {
    if (g < 0)
        throw InfeasibleSignature("negative genus");
    if (n != static_cast<int>(r.size()))
        throw ShapeMismatch("leaf weight count does not match n");
    for (std::int64_t v : r)
        if (v < 0)
            throw ShapeMismatch("leaf weights must be nonnegative");
    if (level < 0)
        throw ShapeMismatch("level must be nonnegative");

    if (method == PsiMethod::Enumerate)
        return psi_enumerate(g, std::vector<std::int64_t>(r.begin(), r.end()), level, limits);

    MemoCache local;
    MemoCache& memo = cache ? *cache : local;
    return psi_recurse(g, canonical_key(g, r, level), memo, limits);
}

BigInt genus_cut_count(int g, int n, std::span<const std::int64_t> r, std::int64_t level,
                       MemoCache* cache, const EnumLimits& limits) {
    if (g < 1)
        throw NotApplicable("genus cut needs a loop to open");
    MemoCache local;
    MemoCache& memo = cache ? *cache : local;
    std::vector<std::int64_t> extended(r.begin(), r.end());
    extended.push_back(0);
    extended.push_back(0);
    BigInt total = 0;
    for (std::int64_t a = 0; a <= level; ++a) {
        extended[extended.size() - 2] = a;
        extended[extended.size() - 1] = a;
        total += psi(g - 1, n + 2, extended, level, PsiMethod::Recurse, &memo, limits);
    }
    return total;
}

namespace {

// Exact rank of an integer matrix via elimination over arbitrary precision.
int integer_rank(std::vector<std::vector<BigInt>> rows) {
    if (rows.empty())
        return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0)
                continue;
            const BigInt f1 = rows[rank][c];
            const BigInt f2 = rows[i][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[i][j] = rows[i][j] * f1 - rows[rank][j] * f2;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<BigInt> binomial_row(int d) {
    std::vector<BigInt> row(static_cast<std::size_t>(d) + 1);
    row[0] = 1;
    for (int k = 1; k <= d; ++k)
        row[static_cast<std::size_t>(k)] =
            row[static_cast<std::size_t>(k - 1)] * (d - k + 1) / k;
    return row;
}

// Numerator of the truncated series against (1 - t^period)^dim, or nullopt
// when the truncation cannot certify that the numerator terminates.
std::optional<std::vector<BigInt>> extract_numerator(const std::vector<BigInt>& values, int dim,
                                                     int period) {
    const std::int64_t n_max = static_cast<std::int64_t>(values.size()) - 1;
    if (dim == 0) {
        for (std::size_t k = 1; k < values.size(); ++k)
            if (values[k] != 0)
                return std::nullopt;
        return std::vector<BigInt>{values[0]};
    }
    const std::int64_t max_deg = static_cast<std::int64_t>(period) * dim - 1;
    if (n_max < max_deg + 3)
        return std::nullopt; // too short to certify anything
    const std::vector<BigInt> binom = binomial_row(dim);
    std::vector<BigInt> c(values.size());
    for (std::int64_t k = 0; k <= n_max; ++k) {
        BigInt acc = 0;
        for (int j = 0; j <= dim; ++j) {
            const std::int64_t idx = k - static_cast<std::int64_t>(j) * period;
            if (idx < 0)
                break;
            if (j & 1)
                acc -= binom[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(idx)];
            else
                acc += binom[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(idx)];
        }
        c[static_cast<std::size_t>(k)] = acc;
    }
    for (std::int64_t k = max_deg + 1; k <= n_max; ++k)
        if (c[static_cast<std::size_t>(k)] != 0)
            return std::nullopt;
    std::int64_t deg = max_deg;
    while (deg > 0 && c[static_cast<std::size_t>(deg)] == 0)
        --deg;
    c.resize(static_cast<std::size_t>(deg) + 1);
    return c;
}

} // namespace

HilbertData hilbert_function(const PolytopeSpec& spec, std::int64_t n_max,
                             const EnumLimits& limits) {
    if (n_max < 0)
        throw ShapeMismatch("n_max must be nonnegative");
    HilbertData data;
    data.values.resize(static_cast<std::size_t>(n_max) + 1);
    data.values[0] = 1;
    for (std::int64_t N = 1; N <= n_max; ++N)
        data.values[static_cast<std::size_t>(N)] =
            BigInt(count_lattice_points(spec, N, false, limits));

    // Ring dimension: lattice rank of within-degree point differences at the
    // first two nonempty degrees, plus one for the grading direction.
    std::vector<std::int64_t> sample_degrees;
    for (std::int64_t N = 1; N <= n_max && sample_degrees.size() < 2; ++N)
        if (data.values[static_cast<std::size_t>(N)] != 0)
            sample_degrees.push_back(N);
    if (sample_degrees.empty()) {
        data.ring_dim = 0;
    } else {
        std::vector<std::vector<BigInt>> diffs;
        for (std::int64_t N : sample_degrees) {
            const auto pts = enumerate_lattice_points(spec, N, false, limits);
            for (std::size_t i = 1; i < pts.size(); ++i) {
                std::vector<BigInt> row(pts[i].size());
                for (std::size_t j = 0; j < pts[i].size(); ++j)
                    row[j] = pts[i][j] - pts[0][j];
                diffs.push_back(std::move(row));
            }
        }
        data.ring_dim = integer_rank(std::move(diffs)) + 1;
    }

    for (int period : {1, 2}) {
        if (auto numerator = extract_numerator(data.values, data.ring_dim, period)) {
            data.denominator_period = period;
            data.hstar = std::move(*numerator);
            break;
        }
    }
    return data;
}

StanleyResult stanley_check(const HilbertData& data) {
    if (!data.hstar)
        throw ExtractionFailed("no certified numerator within the computed degree range");
    const auto& h = *data.hstar;
    StanleyResult result;
    result.symmetric = std::equal(h.begin(), h.end(), h.rbegin());
    result.a_invariant = static_cast<std::int64_t>(h.size()) - 1 -
                         static_cast<std::int64_t>(data.ring_dim) * data.denominator_period;
    return result;
}

} // namespace spinpoly
