#include "arena/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace arena {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double to_percent(std::int64_t halves, std::int64_t games) {
    return 100.0 * static_cast<double>(halves) / static_cast<double>(kWinHalves * games);
}

std::vector<Genome> top_genomes(const GenerationSnapshot& snap, std::size_t top) {
    std::vector<Genome> out;
    for (std::size_t i = 0; i < std::min(top, snap.top.size()); ++i) out.push_back(snap.top[i].genome);
    return out;
}

/// Sample standard deviation; 0 for a single sample.
double sample_std(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

MatchupTable round_robin_eval(const Simulator& sim, std::span<const LabeledPolicy> policies, std::size_t n_drafts,
                              int games_per_pair, std::size_t repetitions, std::uint64_t seed) {
    const auto p = policies.size();
    if (p < 2) throw std::invalid_argument("round_robin_eval needs at least two policies");
    if (games_per_pair < 2 || games_per_pair % 2 != 0)
        throw std::invalid_argument("round_robin_eval: games per pair must be even");
    if (repetitions < 1) throw std::invalid_argument("round_robin_eval: repetitions must be >= 1");

    MatchupTable table;
    for (const auto& lp : policies) table.labels.push_back(lp.label);
    const auto ip = static_cast<Eigen::Index>(p);

    std::vector<Eigen::VectorXd> row_avgs;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const auto drafts = generate_drafts(sim.engine().cards(), derive_seed(seed, Phase::EvalDrafts, {rep}),
                                            Phase::EvalDrafts, n_drafts);
        std::vector<std::vector<Deck>> decks(p);
        for (std::size_t i = 0; i < p; ++i)
            for (const auto& d : drafts) decks[i].push_back(build_deck(policies[i].genome, d));

        std::vector<Pairing> pairings;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                for (std::size_t d = 0; d < drafts.size(); ++d) {
                    pairings.push_back({&decks[i][d], &decks[j][d], games_per_pair,
                                        derive_seed(seed, Phase::Evaluation, {rep, i, j, d})});
                    slots.emplace_back(i, j);
                }
        const auto results = sim.play(pairings);
        Eigen::MatrixXd halves = Eigen::MatrixXd::Zero(ip, ip);
        for (std::size_t k = 0; k < results.size(); ++k) {
            const auto [i, j] = slots[k];
            halves(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += static_cast<double>(results[k].a);
            halves(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += static_cast<double>(results[k].b);
        }
        const double games = static_cast<double>(drafts.size()) * games_per_pair;
        Eigen::MatrixXd rates = 100.0 * halves / (static_cast<double>(kWinHalves) * games);
        rates.diagonal().setConstant(kNaN);
        Eigen::VectorXd avg(ip);
        for (Eigen::Index i = 0; i < ip; ++i) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < ip; ++j)
                if (j != i) s += rates(i, j);
            avg[i] = s / static_cast<double>(p - 1);
        }
        table.repetitions.push_back(std::move(rates));
        row_avgs.push_back(std::move(avg));
    }

    table.mean = Eigen::MatrixXd::Constant(ip, ip, kNaN);
    table.stddev = Eigen::MatrixXd::Constant(ip, ip, kNaN);
    table.row_mean.resize(ip);
    table.row_stddev.resize(ip);
    std::vector<double> samples(repetitions);
    for (Eigen::Index i = 0; i < ip; ++i) {
        for (Eigen::Index j = 0; j < ip; ++j) {
            if (i == j) continue;
            for (std::size_t r = 0; r < repetitions; ++r) samples[r] = table.repetitions[r](i, j);
            table.mean(i, j) = Eigen::Map<const Eigen::VectorXd>(samples.data(), static_cast<Eigen::Index>(repetitions)).mean();
            table.stddev(i, j) = sample_std(samples);
        }
        for (std::size_t r = 0; r < repetitions; ++r) samples[r] = row_avgs[r][i];
        table.row_mean[i] = Eigen::Map<const Eigen::VectorXd>(samples.data(), static_cast<Eigen::Index>(repetitions)).mean();
        table.row_stddev[i] = sample_std(samples);
    }
    return table;
}

double pool_win_rate(const Simulator& sim, std::span<const Genome> players, std::span<const Genome> opponents,
                     std::span<const Draft> drafts, int games, std::uint64_t seed) {
    if (players.empty() || opponents.empty() || drafts.empty()) throw std::invalid_argument("pool_win_rate: empty input");
    if (games < 2 || games % 2 != 0) throw std::invalid_argument("pool_win_rate: games must be even");
    std::vector<std::vector<Deck>> player_decks, opponent_decks;
    for (const auto& g : players) {
        player_decks.emplace_back();
        for (const auto& d : drafts) player_decks.back().push_back(build_deck(g, d));
    }
    for (const auto& g : opponents) {
        opponent_decks.emplace_back();
        for (const auto& d : drafts) opponent_decks.back().push_back(build_deck(g, d));
    }
    std::vector<Pairing> pairings;
    for (std::size_t i = 0; i < players.size(); ++i)
        for (std::size_t o = 0; o < opponents.size(); ++o)
            for (std::size_t d = 0; d < drafts.size(); ++d)
                pairings.push_back({&player_decks[i][d], &opponent_decks[o][d], games,
                                    derive_seed(seed, Phase::Evaluation, {o, d})});
    std::int64_t halves = 0;
    for (const auto& r : sim.play(pairings)) halves += r.a;
    return to_percent(halves, static_cast<std::int64_t>(pairings.size()) * games);
}

std::vector<Genome> make_opponent_pool(std::span<const OrderingPolicy> orderings, std::size_t random_count,
                                       std::size_t card_count, std::uint64_t seed) {
    std::vector<Genome> pool;
    for (const auto& o : orderings) {
        if (o.size() != card_count) throw std::invalid_argument("ordering size does not match the card set");
        pool.push_back(ordering_to_policy(o).values());
    }
    Rng rng(derive_seed(seed, Phase::Opponents));
    for (auto& ind : random_population(random_count, card_count, rng)) pool.push_back(std::move(ind.genome));
    return pool;
}

std::vector<CurvePoint> evolution_curve(const Simulator& sim, const RunHistory& history, std::span<const Draft> eval_drafts,
                                        std::span<const Genome> opponents, int games, std::uint64_t seed,
                                        std::size_t top) {
    if (history.generations.empty()) throw std::invalid_argument("evolution_curve: empty history");
    std::vector<CurvePoint> curve;
    for (const auto& snap : history.generations) {
        const auto players = top_genomes(snap, top);
        curve.push_back({snap.generation, snap.cost, pool_win_rate(sim, players, opponents, eval_drafts, games, seed)});
    }
    return curve;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) return std::nullopt;
    const auto n = static_cast<Eigen::Index>(x.size());
    const Eigen::Map<const Eigen::ArrayXd> xa(x.data(), n), ya(y.data(), n);
    const Eigen::ArrayXd dx = xa - xa.mean(), dy = ya - ya.mean();
    const double sxx = dx.square().sum(), syy = dy.square().sum();
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return (dx * dy).sum() / std::sqrt(sxx * syy);
}

CorrelationResult correlation_experiment(const Simulator& sim, const RunHistory& history,
                                         std::span<const Draft> train_drafts, std::span<const Draft> eval_drafts,
                                         std::span<const Genome> opponents, int games, std::uint64_t seed,
                                         std::size_t top) {
    for (const auto& a : train_drafts)
        for (const auto& b : eval_drafts)
            if (a == b) throw std::invalid_argument("correlation_experiment: train and eval drafts overlap");
    CorrelationResult result;
    std::vector<double> xs, ys;
    for (const auto& snap : history.generations) {
        const auto players = top_genomes(snap, top);
        CorrelationPoint pt;
        pt.generation = snap.generation;
        pt.train_win_rate = pool_win_rate(sim, players, opponents, train_drafts, games, derive_seed(seed, {0}));
        pt.eval_win_rate = pool_win_rate(sim, players, opponents, eval_drafts, games, derive_seed(seed, {1}));
        xs.push_back(pt.train_win_rate);
        ys.push_back(pt.eval_win_rate);
        result.points.push_back(pt);
    }
    result.pearson = pearson(xs, ys);
    return result;
}

ChampionsResult champions_analysis(const Simulator& sim, const RunHistory& history, std::span<const Draft> train_drafts,
                                   int games, std::size_t stride, std::uint64_t seed, std::size_t top) {
    if (stride < 1) throw std::invalid_argument("champions_analysis: stride must be >= 1");
    ChampionsResult result;
    const auto& gens = history.generations;
    for (const auto& s : gens) result.generations.push_back(s.generation);
    std::vector<std::size_t> champion_rows;
    for (std::size_t c = 0; c < gens.size(); c += stride) {
        champion_rows.push_back(c);
        result.champion_generations.push_back(gens[c].generation);
    }
    result.win_rate.resize(static_cast<Eigen::Index>(champion_rows.size()), static_cast<Eigen::Index>(gens.size()));
    for (std::size_t r = 0; r < champion_rows.size(); ++r) {
        const auto champions = top_genomes(gens[champion_rows[r]], top);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const auto opponents = top_genomes(gens[g], top);
            result.win_rate(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) =
                pool_win_rate(sim, champions, opponents, train_drafts, games, derive_seed(seed, {g}));
        }
    }
    return result;
}

void write_matchup_csv(std::ostream& out, const MatchupTable& table) {
    out << "row,col,mean,std\n";
    const auto p = static_cast<Eigen::Index>(table.labels.size());
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j)
            if (i != j)
                out << table.labels[i] << ',' << table.labels[j] << ',' << table.mean(i, j) << ',' << table.stddev(i, j)
                    << '\n';
        out << table.labels[i] << ",Average," << table.row_mean[i] << ',' << table.row_stddev[i] << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "cost,winrate\n";
    for (const auto& pt : curve) out << pt.cost << ',' << pt.win_rate << '\n';
}

void write_correlation_csv(std::ostream& out, const CorrelationResult& result) {
    out << "checkpoint,train_wr,eval_wr\n";
    for (const auto& pt : result.points) out << pt.generation << ',' << pt.train_win_rate << ',' << pt.eval_win_rate << '\n';
}

void write_champions_csv(std::ostream& out, const ChampionsResult& result) {
    out << "champion_id,generation,winrate\n";
    for (Eigen::Index r = 0; r < result.win_rate.rows(); ++r)
        for (Eigen::Index g = 0; g < result.win_rate.cols(); ++g)
            out << result.champion_generations[static_cast<std::size_t>(r)] << ','
                << result.generations[static_cast<std::size_t>(g)] << ',' << result.win_rate(r, g) << '\n';
}

std::string format_matchup_table(const MatchupTable& table) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    const auto p = static_cast<Eigen::Index>(table.labels.size());
    std::size_t w = 16;
    for (const auto& l : table.labels) w = std::max(w, l.size());
    const int width = static_cast<int>(w) + 2;
    out << std::setw(width) << "";
    for (const auto& l : table.labels) out << std::setw(width) << l;
    out << std::setw(width) << "Average" << '\n';
    for (Eigen::Index i = 0; i < p; ++i) {
        out << std::setw(width) << table.labels[i];
        for (Eigen::Index j = 0; j < p; ++j) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(2);
            if (i == j)
                cell << "-";
            else
                cell << table.mean(i, j) << " ± " << table.stddev(i, j);
            out << std::setw(width) << cell.str();
        }
        std::ostringstream avg;
        avg << std::fixed << std::setprecision(2) << table.row_mean[i] << " ± " << table.row_stddev[i];
        out << std::setw(width) << avg.str() << '\n';
    }
    return out.str();
}

}  // namespace arena
