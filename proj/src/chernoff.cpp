#include "searchstop/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "searchstop/detail/simplex.hpp"
#include "searchstop/info.hpp"

namespace searchstop {

void ExperimentModel::validate() const {
    if (num_hypotheses() < 2) throw ConfigError("experiment model needs >= 2 hypotheses");
    if (cost.size() != num_hypotheses())
        throw ConfigError("experiment model: cost table and pmf table disagree on hypothesis count");
    const std::size_t num_exp = num_experiments();
    if (num_exp == 0) throw ConfigError("experiment model needs >= 1 experiment");
    const std::size_t alphabet = alphabet_size();
    for (std::size_t i = 0; i < num_hypotheses(); ++i) {
        if (outcome_pmfs[i].size() != num_exp || cost[i].size() != num_exp)
            throw ConfigError("experiment model: ragged table at hypothesis " + std::to_string(i));
        for (std::size_t u = 0; u < num_exp; ++u) {
            if (outcome_pmfs[i][u].size() != alphabet)
                throw ConfigError("experiment model: alphabet mismatch at hypothesis " +
                                  std::to_string(i));
            outcome_pmfs[i][u].require_full_support();
            if (!(cost[i][u] > 0.0))
                throw ConfigError("experiment model: non-positive cost at hypothesis " +
                                  std::to_string(i));
        }
    }
}

ExperimentModel make_search_model(std::size_t num_locations, const Pmf& mu, const Pmf& pi) {
    if (num_locations < 1) throw ConfigError("search model needs >= 1 location");
    if (mu.size() != pi.size())
        throw ConfigError("search model: presence and absence alphabets differ");
    ExperimentModel model;
    const std::size_t num_hyp = num_locations + 1;  // hypothesis 0 = target absent
    model.outcome_pmfs.reserve(num_hyp);
    model.cost.assign(num_hyp, std::vector<double>(num_locations, 1.0));
    for (std::size_t i = 0; i < num_hyp; ++i) {
        std::vector<Pmf> row;
        row.reserve(num_locations);
        for (std::size_t u = 0; u < num_locations; ++u)
            row.push_back(i >= 1 && u + 1 == i ? mu : pi);
        model.outcome_pmfs.push_back(std::move(row));
    }
    return model;
}

ExperimentSelection solve_q_star(const ExperimentModel& model, std::size_t i) {
    const std::size_t num_hyp = model.num_hypotheses();
    const std::size_t num_exp = model.num_experiments();
    if (num_hyp < 2) throw ConfigError("solve_q_star needs >= 2 hypotheses");
    if (i >= num_hyp) throw ConfigError("solve_q_star: hypothesis index out of range");

    // Divergence of i's outcome law from each rival's, per experiment.
    std::vector<std::size_t> rivals;
    rivals.reserve(num_hyp - 1);
    for (std::size_t j = 0; j < num_hyp; ++j)
        if (j != i) rivals.push_back(j);
    std::vector<std::vector<double>> div(rivals.size(), std::vector<double>(num_exp));
    for (std::size_t r = 0; r < rivals.size(); ++r) {
        double best = 0.0;
        for (std::size_t u = 0; u < num_exp; ++u) {
            div[r][u] = kl_divergence(model.outcome_pmfs[i][u], model.outcome_pmfs[rivals[r]][u]);
            if (div[r][u] > best) best = div[r][u];
        }
        if (best <= 0.0)
            throw DegenerateModel("hypotheses " + std::to_string(i) + " and " +
                                  std::to_string(rivals[r]) +
                                  " are indistinguishable under every experiment");
    }

    // After x = q / (sum_u q(u) c(i,u)) the ratio program becomes a linear
    // one: maximize t subject to sum_u x(u) div_j(u) >= t for every rival j,
    // sum_u x(u) c(i,u) = 1, x >= 0. Columns: x (num_exp), t, one slack per
    // rival; rows: one per rival plus the normalization equality.
    const std::size_t num_riv = rivals.size();
    const std::size_t cols = num_exp + 1 + num_riv;
    const std::size_t rows = num_riv + 1;
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
    std::vector<double> b(rows, 0.0);
    std::vector<double> objective(cols, 0.0);
    objective[num_exp] = 1.0;
    for (std::size_t r = 0; r < num_riv; ++r) {
        for (std::size_t u = 0; u < num_exp; ++u) a[r][u] = -div[r][u];
        a[r][num_exp] = 1.0;
        a[r][num_exp + 1 + r] = 1.0;
    }
    for (std::size_t u = 0; u < num_exp; ++u) a[num_riv][u] = model.cost[i][u];
    b[num_riv] = 1.0;

    // Feasible start: all slacks basic plus the single x that best separates
    // i on its own (any positive-cost column works; this one converges fast).
    std::size_t start = 0;
    double start_score = -1.0;
    for (std::size_t u = 0; u < num_exp; ++u) {
        double worst = 1e300;
        for (std::size_t r = 0; r < num_riv; ++r)
            worst = std::min(worst, div[r][u] / model.cost[i][u]);
        if (worst > start_score) { start_score = worst; start = u; }
    }
    std::vector<std::size_t> basis;
    basis.reserve(rows);
    for (std::size_t r = 0; r < num_riv; ++r) basis.push_back(num_exp + 1 + r);
    basis.push_back(start);

    const detail::SimplexResult lp = detail::simplex_max(a, b, objective, std::move(basis));

    std::vector<double> q(num_exp);
    double total = 0.0;
    for (std::size_t u = 0; u < num_exp; ++u) {
        q[u] = lp.x[u] < 0.0 ? 0.0 : lp.x[u];
        total += q[u];
    }
    for (double& w : q) w /= total;
    return {Pmf(std::move(q)), lp.objective};
}

OraclePolicy make_oracle_policy(const ExperimentModel& model) {
    model.validate();
    OraclePolicy policy;
    const std::size_t num_hyp = model.num_hypotheses();
    policy.selections.reserve(num_hyp);
    policy.log_p.resize(num_hyp);
    for (std::size_t i = 0; i < num_hyp; ++i) {
        policy.selections.push_back(solve_q_star(model, i));
        policy.log_p[i].resize(model.num_experiments());
        for (std::size_t u = 0; u < model.num_experiments(); ++u) {
            const Pmf& p = model.outcome_pmfs[i][u];
            policy.log_p[i][u].resize(p.size());
            for (std::size_t z = 0; z < p.size(); ++z)
                policy.log_p[i][u][z] = std::log(p[z]);
        }
    }
    return policy;
}

}  // namespace searchstop
