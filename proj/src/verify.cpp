#include "pcc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "pcc/parallel.hpp"
#include "pcc/rng.hpp"

namespace pcc {

StateSpace state_space(const CachingScheme& s, bool enumerate_files) {
    StateSpace ss;
    ss.tapes = s.tape_spec().enumeration_size();
    ss.demand_vectors = 1;
    for (uint32_t k = 0; k < s.n_users(); k++) {
        if (ss.demand_vectors > (1ull << 40) / s.n_files())
            throw BudgetError("demand space too large");
        ss.demand_vectors *= s.n_files();
    }
    if (enumerate_files) {
        uint64_t nf = s.n_files() * s.file_bits();
        ss.filesets = nf >= 126 ? U128_MAX : (static_cast<u128>(1) << nf);
    } else {
        ss.filesets = 1;
    }
    ss.total = mul_sat(mul_sat(ss.filesets, ss.tapes), ss.demand_vectors);
    return ss;
}

std::vector<uint8_t> view_bytes(uint32_t demand, const CacheContent& cache, const Broadcast& bc) {
    std::vector<uint8_t> out;
    cache.main_bits.append_bytes(out);
    cache.shared_random.append_bytes(out);
    bc.payload.append_bytes(out);
    bc.aux.append_bytes(out);
    out.push_back(static_cast<uint8_t>(demand));
    return out;
}

namespace {

// Histogram over canonicalized views; digests are collision-checked
// against a stored exemplar.
class ViewHist {
public:
    explicit ViewHist(uint32_t n_targets = 1) : n_targets_(n_targets) {}

    void add(const std::vector<uint8_t>& view, uint32_t target) {
        Digest128 d = digest128(view.data(), view.size());
        auto [it, fresh] = rows_.try_emplace(d);
        if (fresh) {
            it->second.view = view;
            it->second.counts.assign(n_targets_, 0);
        } else if (it->second.view != view) {
            throw Error("view digest collision");
        }
        it->second.counts[target]++;
    }

    void merge(ViewHist&& other) {
        for (auto& [d, row] : other.rows_) {
            auto [it, fresh] = rows_.try_emplace(d);
            if (fresh) {
                it->second = std::move(row);
            } else {
                if (it->second.view != row.view) throw Error("view digest collision");
                for (size_t t = 0; t < it->second.counts.size(); t++)
                    it->second.counts[t] += row.counts[t];
            }
        }
    }

    uint32_t n_targets() const { return n_targets_; }
    size_t n_rows() const { return rows_.size(); }

    // Exact-zero test and plug-in value of the mutual information between
    // the row (view) and the column (target) variables.
    std::pair<bool, double> mutual_information() const {
        std::vector<uint64_t> col(n_targets_, 0);
        uint64_t total = 0;
        for (const auto& [d, row] : rows_)
            for (uint32_t t = 0; t < n_targets_; t++) {
                col[t] += row.counts[t];
                total += row.counts[t];
            }
        bool zero = true;
        double bits = 0.0;
        for (const auto& [d, row] : rows_) {
            uint64_t rs = 0;
            for (uint64_t c : row.counts) rs += c;
            for (uint32_t t = 0; t < n_targets_; t++) {
                uint64_t c = row.counts[t];
                if (static_cast<u128>(c) * total != static_cast<u128>(rs) * col[t]) zero = false;
                if (c > 0)
                    bits += static_cast<double>(c) / total *
                            std::log2(static_cast<double>(c) * total /
                                      (static_cast<double>(rs) * col[t]));
            }
        }
        if (zero) bits = 0.0;
        return {zero, bits};
    }

    // Marginalizes the target variable through `digit` and recomputes.
    ViewHist marginal(uint32_t n_values, const std::function<uint32_t(uint32_t)>& digit) const {
        ViewHist out(n_values);
        for (const auto& [d, row] : rows_) {
            auto [it, fresh] = out.rows_.try_emplace(d);
            if (fresh) {
                it->second.view = row.view;
                it->second.counts.assign(n_values, 0);
            }
            for (uint32_t t = 0; t < n_targets_; t++) it->second.counts[digit(t)] += row.counts[t];
        }
        return out;
    }

private:
    struct Row {
        std::vector<uint8_t> view;
        std::vector<uint64_t> counts;
    };
    uint32_t n_targets_;
    std::unordered_map<Digest128, Row, Digest128Hash> rows_;
};

uint32_t other_demand_index(const DemandVector& demands, uint32_t user, uint32_t n_files) {
    uint32_t idx = 0;
    for (uint32_t i = 0; i < demands.size(); i++)
        if (i != user) idx = idx * n_files + demands[i];
    return idx;
}

// Full sweep over (files x tapes x demands), one histogram per user with
// the composite outside-demand as target.
std::vector<ViewHist> build_exact_histograms(const CachingScheme& s, u128 budget) {
    StateSpace ss = state_space(s, true);
    if (ss.total > budget) throw BudgetError("enumeration exceeds state budget");
    uint32_t n = s.n_files(), k = s.n_users();
    uint32_t n_targets = 1;
    for (uint32_t i = 0; i + 1 < k; i++) n_targets *= n;

    uint64_t n_filesets = static_cast<uint64_t>(ss.filesets);
    uint64_t n_tapes = static_cast<uint64_t>(ss.tapes);

    std::vector<ViewHist> result(k, ViewHist(n_targets));
    std::mutex merge_mu;
    parallel_chunks(n_filesets, [&](unsigned, uint64_t begin, uint64_t end) {
        std::vector<ViewHist> local(k, ViewHist(n_targets));
        for (uint64_t f = begin; f < end; f++) {
            FileSet files = FileSet::from_index(n, s.file_bits(), f);
            for (uint64_t t = 0; t < n_tapes; t++) {
                TapeValue tape = s.tape_spec().at(t);
                auto caches = s.place(tape, files);
                for (uint64_t d = 0; d < ss.demand_vectors; d++) {
                    DemandVector demands = DemandVector::from_index(n, k, d);
                    Broadcast bc = s.deliver(tape, files, demands);
                    for (uint32_t u = 0; u < k; u++)
                        local[u].add(view_bytes(demands[u], caches[u], bc),
                                     other_demand_index(demands, u, n));
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mu);
        for (uint32_t u = 0; u < k; u++) result[u].merge(std::move(local[u]));
    });
    return result;
}

} // namespace

std::vector<ExactMi> verify_privacy_exact(const CachingScheme& s, u128 budget) {
    StateSpace ss = state_space(s, true);
    auto hists = build_exact_histograms(s, budget);
    std::vector<ExactMi> out;
    for (uint32_t u = 0; u < s.n_users(); u++) {
        auto [zero, bits] = hists[u].mutual_information();
        out.push_back({u, zero, bits, ss.total});
    }
    return out;
}

std::vector<WeakMi> verify_weak_privacy(const CachingScheme& s, u128 budget) {
    auto hists = build_exact_histograms(s, budget);
    uint32_t n = s.n_files(), k = s.n_users();
    std::vector<WeakMi> out;
    for (uint32_t u = 0; u < k; u++) {
        uint32_t pos = 0;
        for (uint32_t i = 0; i < k; i++) {
            if (i == u) continue;
            // position of user i's digit inside the composite index
            uint32_t shift = k - 2 - pos;
            uint32_t div = 1;
            for (uint32_t j = 0; j < shift; j++) div *= n;
            ViewHist m = hists[u].marginal(n, [&](uint32_t t) { return (t / div) % n; });
            auto [zero, bits] = m.mutual_information();
            out.push_back({u, i, zero, bits});
            pos++;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

DecodeBasisResult verify_decode_basis(const CachingScheme& s, uint64_t tape_samples,
                                      uint64_t seed, u128 budget) {
    StateSpace ss = state_space(s, false);
    uint64_t n_tapes;
    bool enumerate = tape_samples == 0;
    if (enumerate) {
        if (ss.tapes > budget) throw BudgetError("tape enumeration exceeds state budget");
        n_tapes = static_cast<uint64_t>(ss.tapes);
    } else {
        n_tapes = tape_samples;
    }
    uint64_t n_filesets = 1 + s.n_files() * s.file_bits();
    u128 pipelines = mul_sat(mul_sat(n_tapes, n_filesets),
                             mul_sat(ss.demand_vectors, s.n_users()));
    if (pipelines > budget) throw BudgetError("decode-basis run exceeds state budget");

    DecodeBasisResult res;
    res.pass = true;
    res.pipelines = static_cast<uint64_t>(pipelines);
    std::mutex mu;
    parallel_chunks(n_tapes, [&](unsigned, uint64_t begin, uint64_t end) {
        for (uint64_t t = begin; t < end; t++) {
            {
                std::lock_guard<std::mutex> lock(mu);
                if (!res.pass) return;
            }
            TapeValue tape;
            if (enumerate) {
                tape = s.tape_spec().at(t);
            } else {
                CounterRng rng(seed, t);
                tape = s.tape_spec().sample(rng);
            }
            for (uint64_t f = 0; f < n_filesets; f++) {
                FileSet files = f == 0 ? FileSet::zeros(s.n_files(), s.file_bits())
                                       : FileSet::unit(s.n_files(), s.file_bits(),
                                                       static_cast<uint32_t>((f - 1) / s.file_bits()),
                                                       (f - 1) % s.file_bits());
                auto caches = s.place(tape, files);
                for (uint64_t d = 0; d < ss.demand_vectors; d++) {
                    DemandVector demands = DemandVector::from_index(s.n_files(), s.n_users(), d);
                    Broadcast bc = s.deliver(tape, files, demands);
                    for (uint32_t u = 0; u < s.n_users(); u++) {
                        BitString got = s.decode(u, demands[u], caches[u], bc);
                        if (got == files[demands[u]]) continue;
                        uint64_t bit = 0;
                        while (bit < got.size() && got.get(bit) == files[demands[u]].get(bit)) bit++;
                        std::lock_guard<std::mutex> lock(mu);
                        if (res.pass) {
                            res.pass = false;
                            res.failure = "user " + std::to_string(u) + " demand " +
                                          std::to_string(demands[u]) + " tape#" + std::to_string(t) +
                                          (f == 0 ? " zero library" : " unit bit " + std::to_string(f - 1)) +
                                          " first bad output bit " + std::to_string(bit);
                        }
                        return;
                    }
                }
            }
        }
    });
    return res;
}

bool check_gf2_affinity(const CachingScheme& s, uint64_t trials, uint64_t seed) {
    for (uint64_t t = 0; t < trials; t++) {
        CounterRng rng(seed, t);
        TapeValue tape = s.tape_spec().sample(rng);
        DemandVector demands;
        demands.d.resize(s.n_users());
        for (auto& d : demands.d) d = static_cast<uint32_t>(rng.bounded(s.n_files()));
        FileSet x = FileSet::random(s.n_files(), s.file_bits(), rng);
        FileSet y = FileSet::random(s.n_files(), s.file_bits(), rng);
        FileSet xy = FileSet::zeros(s.n_files(), s.file_bits());
        for (uint32_t i = 0; i < s.n_files(); i++) {
            xy.files[i] = x.files[i];
            xy.files[i].xor_in(y.files[i]);
        }
        FileSet zero = FileSet::zeros(s.n_files(), s.file_bits());

        auto run = [&](const FileSet& w) {
            auto caches = s.place(tape, w);
            Broadcast bc = s.deliver(tape, w, demands);
            std::vector<BitString> parts;
            for (uint32_t u = 0; u < s.n_users(); u++) {
                parts.push_back(caches[u].main_bits);
                parts.push_back(s.decode(u, demands[u], caches[u], bc));
            }
            parts.push_back(bc.payload);
            return parts;
        };
        auto f0 = run(zero), fx = run(x), fy = run(y), fxy = run(xy);
        for (size_t i = 0; i < f0.size(); i++) {
            // f(x^y) ^ f(0) == (f(x) ^ f(0)) ^ (f(y) ^ f(0))
            BitString lhs = fxy[i];
            lhs.xor_in(f0[i]);
            BitString rhs = fx[i];
            rhs.xor_in(fy[i]);
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Sampled estimate

namespace {

double entropy_mm_term(uint64_t occupied, uint64_t n) {
    return (static_cast<double>(occupied) - 1.0) / (2.0 * n * std::log(2.0));
}

struct SparseJoint {
    // row key -> counts per target
    std::unordered_map<uint64_t, std::vector<uint64_t>> rows;
    uint32_t n_targets;

    void add(uint64_t key, uint32_t target, uint64_t w = 1) {
        auto [it, fresh] = rows.try_emplace(key);
        if (fresh) it->second.assign(n_targets, 0);
        it->second[target] += w;
    }
};

struct MiStats {
    double plugin = 0.0, mm = 0.0;
    uint64_t occupied_rows = 0;
};

MiStats joint_mi(const SparseJoint& j) {
    std::vector<uint64_t> col(j.n_targets, 0);
    uint64_t total = 0;
    for (const auto& [key, counts] : j.rows)
        for (uint32_t t = 0; t < j.n_targets; t++) {
            col[t] += counts[t];
            total += counts[t];
        }
    MiStats st;
    if (total == 0) return st;
    uint64_t cells = 0, cols_used = 0;
    for (uint64_t c : col)
        if (c) cols_used++;
    for (const auto& [key, counts] : j.rows) {
        uint64_t rs = 0;
        for (uint64_t c : counts) rs += c;
        if (rs == 0) continue;
        st.occupied_rows++;
        for (uint32_t t = 0; t < j.n_targets; t++) {
            if (!counts[t]) continue;
            cells++;
            st.plugin += static_cast<double>(counts[t]) / total *
                         std::log2(static_cast<double>(counts[t]) * total /
                                   (static_cast<double>(rs) * col[t]));
        }
    }
    st.mm = st.plugin + entropy_mm_term(st.occupied_rows, total) + entropy_mm_term(cols_used, total) -
            entropy_mm_term(cells, total);
    return st;
}

uint64_t poisson_draw(double lambda, CounterRng& rng) {
    if (lambda <= 0) return 0;
    if (lambda > 50) {
        // normal approximation
        double u1 = (rng.next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
        double u2 = (rng.next_u64() >> 11) * 0x1.0p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        double v = lambda + std::sqrt(lambda) * z;
        return v < 0 ? 0 : static_cast<uint64_t>(v + 0.5);
    }
    double limit = std::exp(-lambda), prod = 1.0;
    uint64_t n = 0;
    do {
        prod *= (rng.next_u64() >> 11) * 0x1.0p-53;
        if (prod <= limit) break;
        n++;
    } while (n < 4096);
    return n;
}

} // namespace

MiEstimate verify_privacy_estimate(const CachingScheme& s, uint32_t user, uint64_t samples,
                                   uint32_t bins, uint64_t seed) {
    if (samples == 0) throw ParamError("estimate needs a positive sample count");
    if (user >= s.n_users()) throw ParamError("estimate: bad user");
    uint32_t n = s.n_files(), k = s.n_users();
    uint32_t n_targets = 1;
    for (uint32_t i = 0; i + 1 < k; i++) n_targets *= n;

    SparseJoint joint;
    joint.n_targets = n_targets;
    std::mutex mu;
    parallel_chunks(samples, [&](unsigned, uint64_t begin, uint64_t end) {
        SparseJoint local;
        local.n_targets = n_targets;
        for (uint64_t i = begin; i < end; i++) {
            CounterRng rng(seed, i);
            FileSet files = FileSet::random(n, s.file_bits(), rng);
            TapeValue tape = s.tape_spec().sample(rng);
            DemandVector demands;
            demands.d.resize(k);
            for (auto& d : demands.d) d = static_cast<uint32_t>(rng.bounded(n));
            auto caches = s.place(tape, files);
            Broadcast bc = s.deliver(tape, files, demands);
            auto bytes = view_bytes(demands[user], caches[user], bc);
            Digest128 dig = digest128(bytes.data(), bytes.size());
            uint64_t key = bins ? dig.lo % bins : dig.lo ^ (dig.hi * 0x9e3779b97f4a7c15ULL);
            local.add(key, other_demand_index(demands, user, n));
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [key, counts] : local.rows)
            for (uint32_t t = 0; t < n_targets; t++)
                if (counts[t]) joint.add(key, t, counts[t]);
    });

    MiStats st = joint_mi(joint);
    MiEstimate est;
    est.user = user;
    est.samples = samples;
    est.bins = bins;
    est.distinct_keys = st.occupied_rows;
    est.plugin_bits = st.plugin;
    est.mm_bits = st.mm;

    // Poisson bootstrap percentile interval.
    const unsigned reps = 40;
    std::vector<double> boot(reps);
    CounterRng brng(seed ^ 0x626f6f74ULL, 0);
    for (unsigned r = 0; r < reps; r++) {
        SparseJoint res;
        res.n_targets = n_targets;
        for (const auto& [key, counts] : joint.rows)
            for (uint32_t t = 0; t < n_targets; t++)
                if (counts[t]) {
                    uint64_t c = poisson_draw(static_cast<double>(counts[t]), brng);
                    if (c) res.add(key, t, c);
                }
        boot[r] = joint_mi(res).mm;
    }
    std::sort(boot.begin(), boot.end());
    est.ci_lo = boot[static_cast<size_t>(reps * 0.05)];
    est.ci_hi = boot[static_cast<size_t>(reps * 0.95) - 1];
    return est;
}

// ---------------------------------------------------------------------------

std::vector<StrongMi> verify_strong_privacy(const CachingScheme& s, unsigned n_filesets,
                                            uint64_t seed, u128 budget, const ViewStatFn& stat) {
    StateSpace ss = state_space(s, false);
    if (mul_sat(mul_sat(ss.tapes, ss.demand_vectors), n_filesets) > budget)
        throw BudgetError("strong-privacy enumeration exceeds state budget");
    uint32_t n = s.n_files(), k = s.n_users();
    uint64_t n_tapes = static_cast<uint64_t>(ss.tapes);

    std::vector<StrongMi> out;
    for (uint32_t mask = 1; mask < (1u << k); mask++) {
        uint32_t outside = 0;
        for (uint32_t i = 0; i < k; i++)
            if (!((mask >> i) & 1)) outside++;
        uint32_t n_targets = 1;
        for (uint32_t i = 0; i < outside; i++) n_targets *= n;

        StrongMi res{mask, true, 0.0};
        for (unsigned fs = 0; fs < n_filesets; fs++) {
            CounterRng rng(seed, 0x66736574ULL + fs);
            FileSet files = FileSet::random(n, s.file_bits(), rng);
            ViewHist hist(n_targets);
            for (uint64_t t = 0; t < n_tapes; t++) {
                TapeValue tape = s.tape_spec().at(t);
                auto caches = s.place(tape, files);
                for (uint64_t d = 0; d < ss.demand_vectors; d++) {
                    DemandVector demands = DemandVector::from_index(n, k, d);
                    Broadcast bc = s.deliver(tape, files, demands);
                    std::vector<uint8_t> view;
                    if (stat) {
                        view = stat(files, tape, demands, caches, bc, mask);
                    } else {
                        for (uint32_t u = 0; u < k; u++) {
                            if (!((mask >> u) & 1)) continue;
                            caches[u].main_bits.append_bytes(view);
                            caches[u].shared_random.append_bytes(view);
                            view.push_back(static_cast<uint8_t>(demands[u]));
                        }
                        bc.payload.append_bytes(view);
                        bc.aux.append_bytes(view);
                    }
                    uint32_t target = 0;
                    for (uint32_t i = 0; i < k; i++)
                        if (!((mask >> i) & 1)) target = target * n + demands[i];
                    hist.add(view, target);
                }
            }
            auto [zero, bits] = hist.mutual_information();
            if (!zero) res.zero = false;
            res.max_mi_bits = std::max(res.max_mi_bits, bits);
        }
        out.push_back(res);
    }
    return out;
}

DistEqResult verify_lemma3(const CachingScheme& s, u128 budget) {
    if (s.n_users() != 2) throw ParamError("distribution-equality check is for K = 2");
    StateSpace ss = state_space(s, true);
    if (ss.total > budget) throw BudgetError("enumeration exceeds state budget");
    uint32_t n = s.n_files();
    uint64_t n_filesets = static_cast<uint64_t>(ss.filesets);
    uint64_t n_tapes = static_cast<uint64_t>(ss.tapes);

    for (uint32_t k = 0; k < 2; k++) {
        for (uint32_t j = 0; j < n; j++) {
            ViewHist hist(n);
            for (uint64_t f = 0; f < n_filesets; f++) {
                FileSet files = FileSet::from_index(n, s.file_bits(), f);
                for (uint64_t t = 0; t < n_tapes; t++) {
                    TapeValue tape = s.tape_spec().at(t);
                    auto caches = s.place(tape, files);
                    for (uint32_t other = 0; other < n; other++) {
                        DemandVector demands;
                        demands.d = k == 0 ? std::vector<uint32_t>{j, other}
                                           : std::vector<uint32_t>{other, j};
                        Broadcast bc = s.deliver(tape, files, demands);
                        std::vector<uint8_t> view;
                        bc.payload.append_bytes(view);
                        bc.aux.append_bytes(view);
                        caches[k].main_bits.append_bytes(view);
                        caches[k].shared_random.append_bytes(view);
                        files[j].append_bytes(view);
                        hist.add(view, other);
                    }
                }
            }
            auto [zero, bits] = hist.mutual_information();
            // identical conditionals <=> independence under the uniform
            // other-demand weighting used here
            if (!zero)
                return {false, "user " + std::to_string(k) + " own demand " + std::to_string(j) +
                                   ": conditionals differ (mi " + std::to_string(bits) + " bits)"};
        }
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------

RateMeasurement measure_rates(const SchemeFactory& factory, uint64_t l, uint64_t tape_samples,
                              uint64_t seed) {
    SchemePtr s = factory(l);
    RateMeasurement m;
    m.payload_constant = true;
    m.decode_ok = true;
    uint64_t f = s->file_bits();
    StateSpace ss = state_space(*s, false);
    if (ss.demand_vectors > (1ull << 16)) throw BudgetError("too many demand vectors to sweep");

    bool first = true;
    for (uint64_t t = 0; t < std::max<uint64_t>(1, tape_samples); t++) {
        CounterRng rng(seed, t);
        TapeValue tape = s->tape_spec().sample(rng);
        FileSet files = FileSet::random(s->n_files(), f, rng);
        auto caches = s->place(tape, files);
        for (uint32_t u = 0; u < s->n_users(); u++) {
            m.cache_main_bits = std::max(m.cache_main_bits, caches[u].main_bits.size());
            m.shared_bits = std::max(m.shared_bits, caches[u].shared_random.bit_size());
        }
        for (uint64_t d = 0; d < ss.demand_vectors; d++) {
            DemandVector demands = DemandVector::from_index(s->n_files(), s->n_users(), d);
            Broadcast bc = s->deliver(tape, files, demands);
            if (first) {
                m.payload_bits = bc.payload.size();
                m.aux_bits = bc.aux.bit_size();
                first = false;
            } else if (bc.payload.size() != m.payload_bits || bc.aux.bit_size() != m.aux_bits) {
                m.payload_constant = false;
            }
            for (uint32_t u = 0; u < s->n_users(); u++)
                if (!(s->decode(u, demands[u], caches[u], bc) == files[demands[u]]))
                    m.decode_ok = false;
        }
    }
    m.memory = rat_u64(m.cache_main_bits, f);
    m.memory.canonicalize();
    m.rate = rat_u64(m.payload_bits, f);
    m.rate.canonicalize();

    // The auxiliary record must not grow with the segment scale.
    SchemePtr s2 = factory(2 * l);
    CounterRng rng(seed, 0x6c32ULL);
    TapeValue tape = s2->tape_spec().sample(rng);
    FileSet files = FileSet::random(s2->n_files(), s2->file_bits(), rng);
    DemandVector demands = DemandVector::from_index(s2->n_files(), s2->n_users(), 0);
    Broadcast bc = s2->deliver(tape, files, demands);
    m.aux_constant_in_l = bc.aux.bit_size() == m.aux_bits;
    return m;
}

// ---------------------------------------------------------------------------
// Negative controls

namespace {

// Rate-2 scheme for two files and two users that ships both demands in the
// clear: exact leakage of one full bit about the other demand.
class LeakyScheme : public CachingScheme {
public:
    explicit LeakyScheme(uint64_t l) : l_(l) {
        if (l_ == 0) throw ParamError("leaky: l must be positive");
    }
    std::string name() const override { return "leaky"; }
    uint32_t n_files() const override { return 2; }
    uint32_t n_users() const override { return 2; }
    uint64_t file_bits() const override { return l_; }
    const TapeSpec& tape_spec() const override { return tape_; }

    std::vector<CacheContent> place(const TapeValue&, const FileSet&) const override {
        return std::vector<CacheContent>(2);
    }
    Broadcast deliver(const TapeValue&, const FileSet& files,
                      const DemandVector& demands) const override {
        check_inputs(files, demands);
        Broadcast bc;
        BitWriter w(2 * l_);
        w.put(files[0]);
        w.put(files[1]);
        bc.payload = w.finish();
        bc.aux.add("d0", 1, demands[0]);
        bc.aux.add("d1", 1, demands[1]);
        return bc;
    }
    BitString decode(uint32_t user, uint32_t demand, const CacheContent&,
                     const Broadcast& bc) const override {
        if (user >= 2 || demand >= 2) throw ParamError("leaky: bad user/demand");
        return bc.payload.slice(demand * l_, l_);
    }

private:
    uint64_t l_;
    TapeSpec tape_;
};

class CorruptedScheme : public CachingScheme {
public:
    CorruptedScheme(SchemePtr inner, uint64_t bit) : inner_(std::move(inner)), bit_(bit) {}
    std::string name() const override { return inner_->name() + "+fault"; }
    uint32_t n_files() const override { return inner_->n_files(); }
    uint32_t n_users() const override { return inner_->n_users(); }
    uint64_t file_bits() const override { return inner_->file_bits(); }
    const TapeSpec& tape_spec() const override { return inner_->tape_spec(); }
    std::vector<CacheContent> place(const TapeValue& t, const FileSet& w) const override {
        return inner_->place(t, w);
    }
    Broadcast deliver(const TapeValue& t, const FileSet& w, const DemandVector& d) const override {
        Broadcast bc = inner_->deliver(t, w, d);
        if (bit_ < bc.payload.size()) bc.payload.flip(bit_);
        return bc;
    }
    BitString decode(uint32_t u, uint32_t d, const CacheContent& c,
                     const Broadcast& bc) const override {
        return inner_->decode(u, d, c, bc);
    }

private:
    SchemePtr inner_;
    uint64_t bit_;
};

} // namespace

SchemePtr make_leaky_scheme(uint64_t l) { return std::make_shared<LeakyScheme>(l); }

SchemePtr make_corrupted(SchemePtr inner, uint64_t payload_bit) {
    return std::make_shared<CorruptedScheme>(std::move(inner), payload_bit);
}

} // namespace pcc
