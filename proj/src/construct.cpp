#include "rlldpc/construct.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "rlldpc/rng.hpp"

namespace rlldpc {

namespace {

// Block length of the reference construction at scale 1.
constexpr std::int64_t kReferenceN = 1'000'000;

std::int64_t scaled_or_throw(const Rational& fraction, const Rational& scale, const char* what) {
    Rational scaled = fraction * Rational(kReferenceN) * scale;
    if (scaled.denominator() != 1) {
        Rational count = fraction * Rational(kReferenceN);
        throw std::invalid_argument(std::string("scaled count not integral: ") + what + " count " +
                                    format_rational(count) + " at scale " +
                                    format_rational(scale) + " gives " + format_rational(scaled));
    }
    return scaled.numerator();
}

}  // namespace

std::int64_t BaseCounts::ab_rows() const {
    std::int64_t t = 0;
    for (auto& [w, n] : ab_row_weights) t += n;
    return t;
}
std::int64_t BaseCounts::ab_cols() const {
    std::int64_t t = 0;
    for (auto& [w, n] : ab_col_weights) t += n;
    return t;
}
std::int64_t BaseCounts::cd_rows() const {
    std::int64_t t = 0;
    for (auto& [w, n] : cd_row_weights) t += n;
    return t;
}
std::int64_t BaseCounts::ab_edges() const {
    std::int64_t t = 0;
    for (auto& [w, n] : ab_col_weights) t += w * n;
    return t;
}
std::int64_t BaseCounts::cd_edges() const {
    std::int64_t t = 0;
    for (auto& [w, n] : cd_row_weights) t += w * n;
    return t;
}

BaseCounts scaled_counts(const DegreeDistribution& dist, const Rational& scale) {
    if (scale <= Rational(0)) throw std::invalid_argument("scale must be positive");
    ValidationReport report = validate_distribution(dist);
    if (!report.ok())
        throw std::invalid_argument("invalid degree distribution:\n" + report.to_text());
    if (dist.edge_types != 3)
        throw std::invalid_argument("raptor-like construction needs exactly 3 edge types");

    BaseCounts counts;
    int typed_cd_weight = -1;
    for (const auto& t : dist.variable_terms) {
        const auto& d = t.degree.degrees;
        if (d[0] > 0) {
            // typed column: participates in AB and CD
            if (d[1] <= 0 || d[2] != 0)
                throw std::invalid_argument(
                    "variable term with type-1 edges must carry type-2 edges and no type-3 edge");
            if (typed_cd_weight < 0) typed_cd_weight = d[1];
            if (typed_cd_weight != d[1])
                throw std::invalid_argument("typed columns must share one type-2 degree");
            counts.ab_col_weights.emplace_back(d[0],
                                               scaled_or_throw(t.coefficient, scale, "ab column"));
        } else if (d[2] > 0) {
            if (d[2] != 1 || d[1] != 0)
                throw std::invalid_argument("identity columns must have a single type-3 edge");
            scaled_or_throw(t.coefficient, scale, "identity column");
        } else {
            throw std::invalid_argument("variable term with only type-2 edges unsupported");
        }
    }
    for (const auto& t : dist.check_terms) {
        const auto& d = t.degree.degrees;
        if (d[0] > 0) {
            if (d[1] != 0 || d[2] != 0)
                throw std::invalid_argument("AB check rows must carry only type-1 edges");
            counts.ab_row_weights.emplace_back(d[0], scaled_or_throw(t.coefficient, scale, "ab row"));
        } else if (d[1] > 0) {
            if (d[2] != 1)
                throw std::invalid_argument("CD check rows must carry exactly one type-3 edge");
            counts.cd_row_weights.emplace_back(d[1], scaled_or_throw(t.coefficient, scale, "cd row"));
        } else {
            throw std::invalid_argument("check term without type-1 or type-2 edges unsupported");
        }
    }
    if (counts.ab_col_weights.empty() || counts.ab_row_weights.empty() ||
        counts.cd_row_weights.empty())
        throw std::invalid_argument("distribution does not match the raptor-like block layout");
    counts.cd_col_weight = typed_cd_weight;

    std::sort(counts.ab_col_weights.begin(), counts.ab_col_weights.end());
    std::sort(counts.ab_row_weights.begin(), counts.ab_row_weights.end());
    std::sort(counts.cd_row_weights.begin(), counts.cd_row_weights.end());

    if (counts.ab_edges() != [&] {
            std::int64_t t = 0;
            for (auto& [w, n] : counts.ab_row_weights) t += w * n;
            return t;
        }())
        throw std::invalid_argument("AB row/column socket totals disagree");
    if (counts.cd_edges() != counts.ab_cols() * counts.cd_col_weight)
        throw std::invalid_argument("CD row/column socket totals disagree");
    return counts;
}

// ---------------------------------------------------------------------------
// AB: progressive edge growth

SparseBinaryMatrix build_ab(const DegreeDistribution& dist, const Rational& scale,
                            std::uint64_t seed) {
    (void)seed;  // selection is fully deterministic (max distance, then lowest
                 // current degree, then lowest index)
    const BaseCounts counts = scaled_counts(dist, scale);
    const std::int64_t nrows = counts.ab_rows();
    const std::int64_t ncols = counts.ab_cols();

    std::vector<int> cap(nrows), cur(nrows, 0);
    {
        std::int64_t r = 0;
        for (auto& [w, n] : counts.ab_row_weights)
            for (std::int64_t i = 0; i < n; ++i) cap[r++] = w;
    }
    std::vector<int> col_weight(ncols);
    {
        std::int64_t c = 0;
        for (auto& [w, n] : counts.ab_col_weights)
            for (std::int64_t i = 0; i < n; ++i) col_weight[c++] = w;
    }

    std::vector<std::vector<std::uint32_t>> row_adj(nrows), col_adj(ncols);
    for (std::int64_t r = 0; r < nrows; ++r) row_adj[r].reserve(cap[r]);
    for (std::int64_t c = 0; c < ncols; ++c) col_adj[c].reserve(col_weight[c]);

    constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();
    std::vector<std::int32_t> row_dist(nrows);
    std::vector<std::uint32_t> row_stamp(nrows, 0), col_stamp(ncols, 0);
    std::uint32_t epoch = 0;
    std::vector<std::uint32_t> frontier, next_rows;

    // BFS over the current graph from column c0; stamps row distances
    auto bfs = [&](std::uint32_t c0) {
        ++epoch;
        frontier.clear();
        frontier.push_back(c0);
        col_stamp[c0] = epoch;
        std::int32_t depth = 1;
        while (!frontier.empty()) {
            next_rows.clear();
            for (std::uint32_t c : frontier)
                for (std::uint32_t r : col_adj[c])
                    if (row_stamp[r] != epoch) {
                        row_stamp[r] = epoch;
                        row_dist[r] = depth;
                        next_rows.push_back(r);
                    }
            frontier.clear();
            for (std::uint32_t r : next_rows)
                for (std::uint32_t c : row_adj[r])
                    if (col_stamp[c] != epoch) {
                        col_stamp[c] = epoch;
                        frontier.push_back(c);
                    }
            depth += 2;
        }
    };

    // When every row with remaining capacity sits at distance 3 (a forced
    // 4-cycle, which happens only in the exact-capacity endgame), move one
    // edge from a distant full row onto the near row instead, freeing the
    // distant row for this column. The relocated column must itself stay
    // 4-cycle-free.
    auto repair = [&](std::int64_t r_short) -> std::int64_t {
        std::vector<std::int32_t> dist_c(nrows, kInf);
        for (std::int64_t r = 0; r < nrows; ++r)
            if (row_stamp[r] == epoch) dist_c[r] = row_dist[r];
        int attempts = 0;
        for (std::int64_t r_far = 0; r_far < nrows; ++r_far) {
            if (dist_c[r_far] <= 3) continue;  // must not create a short cycle for c
            for (std::size_t slot = 0; slot < row_adj[r_far].size(); ++slot) {
                const std::uint32_t c2 = row_adj[r_far][slot];
                auto& c2_rows = col_adj[c2];
                bool adjacent = false;
                for (std::uint32_t r : c2_rows) adjacent |= r == r_short;
                if (adjacent) continue;
                if (++attempts > 64) return -1;
                // tentatively remove (r_far, c2) and check c2's distance to r_short
                row_adj[r_far].erase(row_adj[r_far].begin() + slot);
                c2_rows.erase(std::find(c2_rows.begin(), c2_rows.end(), r_far));
                bfs(c2);
                const bool ok = !(row_stamp[r_short] == epoch && row_dist[r_short] <= 3);
                if (ok) {
                    row_adj[r_short].push_back(c2);
                    c2_rows.push_back(static_cast<std::uint32_t>(r_short));
                    ++cur[r_short];
                    --cur[r_far];
                    return r_far;
                }
                row_adj[r_far].insert(row_adj[r_far].begin() + slot, c2);
                c2_rows.push_back(static_cast<std::uint32_t>(r_far));
            }
        }
        return -1;
    };

    for (std::int64_t c = 0; c < ncols; ++c) {
        for (int t = 0; t < col_weight[c]; ++t) {
            if (t > 0) bfs(static_cast<std::uint32_t>(c));
            std::int64_t best = -1;
            std::int32_t best_dist = -1;
            int best_cur = 0;
            for (std::int64_t r = 0; r < nrows; ++r) {
                if (cur[r] >= cap[r]) continue;
                std::int32_t d = (t > 0 && row_stamp[r] == epoch) ? row_dist[r] : kInf;
                if (d == 1) continue;  // already a neighbour of this column
                if (best >= 0 && (d < best_dist || (d == best_dist && cur[r] >= best_cur)))
                    continue;
                best = r;
                best_dist = d;
                best_cur = cur[r];
            }
            if (best < 0)
                throw std::runtime_error("peg: no admissible check node left for column " +
                                         std::to_string(c));
            if (best_dist <= 3) {
                const std::int64_t swapped = repair(best);
                if (swapped >= 0) best = swapped;
            }
            row_adj[best].push_back(static_cast<std::uint32_t>(c));
            col_adj[c].push_back(static_cast<std::uint32_t>(best));
            ++cur[best];
        }
    }

    std::vector<SparseBinaryMatrix::Edge> edges;
    edges.reserve(counts.ab_edges());
    for (std::int64_t r = 0; r < nrows; ++r)
        for (std::uint32_t c : row_adj[r]) edges.emplace_back(static_cast<std::uint32_t>(r), c);
    return SparseBinaryMatrix::from_edges(nrows, ncols, std::move(edges));
}

// ---------------------------------------------------------------------------
// CD: stratified random placement with a cut-aware row-weight interleave

namespace {

struct RowWeightPlan {
    std::int64_t total_rows = 0;
    std::int64_t anchor_rows = 0;    // surviving rows at the reference cut
    std::int64_t light_at_anchor = 0;
    std::int64_t light_total = 0;
    int light_weight = 0;
    int heavy_weight = 0;

    // number of light rows among the top t rows
    std::int64_t light_prefix(std::int64_t t) const {
        auto rounded = [](std::int64_t num, std::int64_t den) {
            return (2 * num + den) / (2 * den);
        };
        if (anchor_rows <= 0 || anchor_rows >= total_rows)
            return rounded(t * light_total, total_rows);
        if (t <= anchor_rows) return rounded(t * light_at_anchor, anchor_rows);
        return light_at_anchor +
               rounded((t - anchor_rows) * (light_total - light_at_anchor),
                       total_rows - anchor_rows);
    }

    int weight_of_row(std::int64_t r) const {
        return light_prefix(r + 1) > light_prefix(r) ? light_weight : heavy_weight;
    }
};

// When the CD mix is the 5/8-2s 3/8-3s family, deep bottom cuts should leave
// the check mix of the rate-0.05 reference: 41/93 twos among the survivors
// once cutting reaches the 22941/40000 survival point. Other ensembles get a
// flat interleave.
RowWeightPlan make_row_weight_plan(const BaseCounts& counts) {
    if (counts.cd_row_weights.size() != 2)
        throw std::invalid_argument("CD construction expects exactly two check-row weights");
    RowWeightPlan plan;
    plan.light_weight = counts.cd_row_weights[0].first;
    plan.light_total = counts.cd_row_weights[0].second;
    plan.heavy_weight = counts.cd_row_weights[1].first;
    plan.total_rows = counts.cd_rows();

    const bool base_family = plan.light_weight == 2 && plan.heavy_weight == 3 &&
                             plan.light_total * 8 == 5 * plan.total_rows;
    if (base_family) {
        plan.anchor_rows = round_rational(Rational(plan.total_rows) * Rational(22941, 40000));
        plan.light_at_anchor = round_rational(Rational(plan.anchor_rows) * Rational(41, 93));
        // keep the bottom segment realizable (at most one light row per row)
        std::int64_t bottom = plan.total_rows - plan.anchor_rows;
        if (plan.light_total - plan.light_at_anchor > bottom)
            plan.light_at_anchor = plan.light_total - bottom;
    }
    return plan;
}

}  // namespace

SparseBinaryMatrix build_cd(const DegreeDistribution& dist, const Rational& scale,
                            std::uint64_t seed) {
    const BaseCounts counts = scaled_counts(dist, scale);
    const std::int64_t nrows = counts.cd_rows();
    const std::int64_t ncols = counts.ab_cols();
    const int col_weight = counts.cd_col_weight;

    const std::int64_t span = (nrows + col_weight - 1) / col_weight;
    const std::int64_t nstrata = span > 0 ? (nrows + span - 1) / span : 0;
    if (nstrata != col_weight)
        throw std::invalid_argument(
            "CD block too small to stratify: need one row span per column edge");

    const RowWeightPlan plan = make_row_weight_plan(counts);

    Rng rng(seed);
    std::vector<std::int64_t> used_by(nrows, -1);
    std::vector<SparseBinaryMatrix::Edge> edges;
    edges.reserve(ncols * col_weight);
    auto place = [&](std::uint32_t row, std::int64_t col) {
        used_by[row] = col;
        edges.emplace_back(row, static_cast<std::uint32_t>(col));
    };

    // Pass 1: per stratum, deal the row slots (each row repeated by its
    // weight) to a random permutation of the columns. Every column gets at
    // most one slot per stratum, so no duplicate edges can occur here.
    // Strata whose capacity falls short of the column count defer the excess
    // columns to pass 2; leftover slots of roomier strata absorb them.
    std::vector<std::vector<std::uint32_t>> leftovers(nstrata);
    std::vector<std::vector<std::uint32_t>> deferred(nstrata);
    std::vector<std::uint32_t> slots, col_perm(ncols);
    for (std::int64_t k = 0; k < nstrata; ++k) {
        const std::int64_t lo = k * span;
        const std::int64_t hi = std::min(nrows, lo + span);
        slots.clear();
        for (std::int64_t r = lo; r < hi; ++r)
            for (int i = 0; i < plan.weight_of_row(r); ++i)
                slots.push_back(static_cast<std::uint32_t>(r));
        for (std::size_t i = slots.size(); i > 1; --i)
            std::swap(slots[i - 1], slots[rng.below(i)]);
        for (std::int64_t c = 0; c < ncols; ++c) col_perm[c] = static_cast<std::uint32_t>(c);
        for (std::size_t i = col_perm.size(); i > 1; --i)
            std::swap(col_perm[i - 1], col_perm[rng.below(i)]);

        const std::int64_t assigned = std::min<std::int64_t>(slots.size(), ncols);
        for (std::int64_t i = 0; i < assigned; ++i) place(slots[i], col_perm[i]);
        for (std::size_t i = assigned; i < slots.size(); ++i) leftovers[k].push_back(slots[i]);
        for (std::int64_t i = assigned; i < ncols; ++i) deferred[k].push_back(col_perm[i]);
    }

    // Pass 2: spill each deferred (column, stratum) edge to the nearest
    // stratum with leftover capacity, upper neighbour first, skipping rows
    // the column already uses.
    auto take_from = [&](std::int64_t k, std::int64_t col) -> bool {
        auto& pool = leftovers[k];
        for (std::size_t i = pool.size(); i > 0; --i) {
            const std::uint32_t row = pool[i - 1];
            if (used_by[row] == col) continue;
            pool[i - 1] = pool.back();
            pool.pop_back();
            place(row, col);
            return true;
        }
        return false;
    };
    for (std::int64_t k = 0; k < nstrata; ++k) {
        for (std::uint32_t col : deferred[k]) {
            bool placed = false;
            for (std::int64_t delta = 1; !placed && delta < nstrata; ++delta) {
                if (k - delta >= 0) placed = take_from(k - delta, col);
                if (!placed && k + delta < nstrata) placed = take_from(k + delta, col);
            }
            if (!placed)
                throw std::runtime_error("cd: no spill capacity left for column " +
                                         std::to_string(col));
        }
    }

    return SparseBinaryMatrix::from_edges(nrows, ncols, std::move(edges));
}

// ---------------------------------------------------------------------------

RLLDPCCode assemble_base(const SparseBinaryMatrix& ab, const SparseBinaryMatrix& cd) {
    if (ab.cols() != cd.cols())
        throw std::invalid_argument("assemble_base: AB and CD column counts differ (" +
                                    std::to_string(ab.cols()) + " vs " +
                                    std::to_string(cd.cols()) + ")");
    const std::int64_t c1 = ab.rows();
    const std::int64_t c2 = cd.rows();
    const std::int64_t typed = ab.cols();

    std::vector<SparseBinaryMatrix::Edge> edges;
    edges.reserve(ab.edge_count() + cd.edge_count() + c2);
    for (const auto& [r, c] : ab.edges()) edges.emplace_back(r, c);
    for (const auto& [r, c] : cd.edges())
        edges.emplace_back(static_cast<std::uint32_t>(r + c1), c);
    for (std::int64_t j = 0; j < c2; ++j)
        edges.emplace_back(static_cast<std::uint32_t>(c1 + j),
                           static_cast<std::uint32_t>(typed + j));

    RLLDPCCode code;
    code.matrix = SparseBinaryMatrix::from_edges(c1 + c2, typed + c2, std::move(edges));
    code.layout = BlockLayout{c1, c2, typed, c2};
    return code;
}

RLLDPCCode construct_base(const DegreeDistribution& dist, const Rational& scale,
                          std::uint64_t seed, const std::string& ensemble_id) {
    SparseBinaryMatrix ab = build_ab(dist, scale, derive_seed(seed, 1));
    SparseBinaryMatrix cd = build_cd(dist, scale, derive_seed(seed, 2));
    RLLDPCCode code = assemble_base(ab, cd);
    code.ensemble_id = ensemble_id;
    code.seed = seed;
    return code;
}

Rational RLLDPCCode::rate() const {
    return Rational(matrix.cols() - matrix.rows(), matrix.cols());
}

RLLDPCCode puncture(const RLLDPCCode& code, std::int64_t p) {
    if (p < 0 || p >= code.layout.cd_rows)
        throw std::invalid_argument("puncture: p = " + std::to_string(p) +
                                    " would cut into the AB block (cd rows: " +
                                    std::to_string(code.layout.cd_rows) + ")");
    const std::int64_t new_rows = code.matrix.rows() - p;
    const std::int64_t new_cols = code.matrix.cols() - p;

    std::vector<SparseBinaryMatrix::Edge> edges;
    edges.reserve(code.matrix.edge_count());
    for (std::int64_t r = 0; r < new_rows; ++r) {
        for (std::uint32_t c : code.matrix.row_cols(r)) {
            if (c >= new_cols)
                throw std::logic_error("puncture: surviving row " + std::to_string(r) +
                                       " references cut column " + std::to_string(c));
            edges.emplace_back(static_cast<std::uint32_t>(r), c);
        }
    }

    RLLDPCCode out;
    out.matrix = SparseBinaryMatrix::from_edges(new_rows, new_cols, std::move(edges));
    out.layout = code.layout;
    out.layout.cd_rows -= p;
    out.layout.identity_cols -= p;
    out.ensemble_id = code.ensemble_id;
    out.seed = code.seed;
    out.adaptation = code.adaptation;
    out.adaptation.push_back({RateMode::Puncture, p});
    return out;
}

namespace {

std::uint64_t support_key(std::span<const std::uint32_t> cols) {
    std::uint64_t key = 0;
    int shift = 0;
    for (std::uint32_t c : cols) {
        key |= (static_cast<std::uint64_t>(c) + 1) << shift;
        shift += 21;
    }
    return key;
}

}  // namespace

RLLDPCCode extend(const RLLDPCCode& code, std::int64_t e, std::uint64_t seed) {
    if (e < 0) throw std::invalid_argument("extend: e must be >= 0");
    if (!code.is_base()) throw std::invalid_argument("extend: only base codes may be extended");
    const std::int64_t m = code.matrix.rows();
    const std::int64_t n = code.matrix.cols();
    const std::int64_t typed = code.layout.typed_cols;
    if (typed >= (1 << 21))
        throw std::invalid_argument("extend: typed column range too large for support dedup");

    // supports of existing sparse check rows, so freshly drawn rows never
    // duplicate one
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(code.layout.cd_rows + e) * 2);
    for (std::int64_t r = code.layout.ab_rows; r < m; ++r) {
        auto cols = code.matrix.row_cols(r);
        if (cols.size() >= 2 && cols.size() <= 4)
            seen.insert(support_key(cols.subspan(0, cols.size() - 1)));  // drop identity entry
    }

    Rng rng(seed);
    std::vector<SparseBinaryMatrix::Edge> edges = code.matrix.edges();
    edges.reserve(edges.size() + static_cast<std::size_t>(e) * 4);

    for (std::int64_t i = 0; i < e; ++i) {
        const int weight = (5 * (i + 1) / 8 > 5 * i / 8) ? 2 : 3;
        std::array<std::uint32_t, 3> cols{};
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000)
                throw std::runtime_error("extend: could not draw a fresh check row");
            for (int k = 0; k < weight;) {
                std::uint32_t c = static_cast<std::uint32_t>(rng.below(typed));
                bool dup = false;
                for (int j = 0; j < k; ++j) dup |= cols[j] == c;
                if (!dup) cols[k++] = c;
            }
            std::sort(cols.begin(), cols.begin() + weight);
            if (seen.insert(support_key({cols.data(), static_cast<std::size_t>(weight)})).second)
                break;
        }
        for (int k = 0; k < weight; ++k)
            edges.emplace_back(static_cast<std::uint32_t>(m + i), cols[k]);
        edges.emplace_back(static_cast<std::uint32_t>(m + i), static_cast<std::uint32_t>(n + i));
    }

    RLLDPCCode out;
    out.matrix = SparseBinaryMatrix::from_edges(m + e, n + e, std::move(edges));
    out.layout = code.layout;
    out.layout.cd_rows += e;
    out.layout.identity_cols += e;
    out.ensemble_id = code.ensemble_id;
    out.seed = code.seed;
    out.adaptation = code.adaptation;
    out.adaptation.push_back({RateMode::Extend, e});
    return out;
}

}  // namespace rlldpc
