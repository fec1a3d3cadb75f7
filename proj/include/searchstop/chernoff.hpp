#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "searchstop/errors.hpp"
#include "searchstop/exploration.hpp"
#include "searchstop/pmf.hpp"
#include "searchstop/rng.hpp"

namespace searchstop {

// Known-model sequential design of experiments: a controller that knows every
// hypothesis's outcome distribution under every experiment, picks experiments
// to maximize the worst-case discrimination rate per unit cost, and stops on a
// log-likelihood-ratio threshold. Serves as the informed baseline the
// universal schemes are measured against.

struct ExperimentModel {
    // outcome_pmfs[i][u] is the outcome distribution under hypothesis i when
    // experiment u is performed; cost[i][u] > 0 is the price of running u
    // while i is true.
    std::vector<std::vector<Pmf>> outcome_pmfs;
    std::vector<std::vector<double>> cost;

    std::size_t num_hypotheses() const noexcept { return outcome_pmfs.size(); }
    std::size_t num_experiments() const noexcept {
        return outcome_pmfs.empty() ? 0 : outcome_pmfs.front().size();
    }
    std::size_t alphabet_size() const noexcept {
        return outcome_pmfs.empty() || outcome_pmfs.front().empty()
                   ? 0
                   : outcome_pmfs.front().front().size();
    }

    // Rectangular tables, >= 2 hypotheses, >= 1 experiment, matching
    // alphabets, full-support pmfs, positive costs. Throws ConfigError.
    void validate() const;
};

// Hide-and-seek instance: the target sits in one of `num_locations` cells
// (hypothesis i >= 1) or is absent (hypothesis 0). Looking into cell u yields
// a mu-draw when the target is there and a pi-draw otherwise; every look
// costs 1.
ExperimentModel make_search_model(std::size_t num_locations, const Pmf& mu, const Pmf& pi);

// Experiment distribution tuned to hypothesis i, with the attained value of
// min over j != i of sum_u q(u) D(p_i^u || p_j^u) / sum_u q(u) c(i,u).
struct ExperimentSelection {
    Pmf q_star;
    double value;
};

// Maximizes the worst-case discrimination-per-cost ratio above over all
// experiment distributions q. Solved exactly as a linear program after the
// standard change of variables x = q / (sum_u q(u) c(i,u)). Throws
// DegenerateModel if some competing hypothesis j is indistinguishable from i
// under every experiment.
ExperimentSelection solve_q_star(const ExperimentModel& model, std::size_t i);

// Per-model tables shared by all runs: the tuned experiment distributions and
// the log-pmf lookup used to update likelihoods.
struct OraclePolicy {
    std::vector<ExperimentSelection> selections;         // one per hypothesis
    std::vector<std::vector<std::vector<double>>> log_p; // [i][u][z]
};

OraclePolicy make_oracle_policy(const ExperimentModel& model);

// One in-flight run of the controller. At the sparse exploration instants it
// round-robins through the experiments regardless of beliefs; otherwise it
// samples from q* of the current maximum-likelihood hypothesis. It stops once
// the ML hypothesis leads every rival by more than log(a').
class ChernoffRun {
public:
    ChernoffRun(const ExperimentModel& model, const OraclePolicy& policy,
                double a_prime, double b)
        : model_(&model),
          policy_(&policy),
          log_a_prime_(validate_threshold(a_prime)),
          schedule_(b),
          log_likelihoods_(model.num_hypotheses(), 0.0),
          accumulated_cost_(model.num_hypotheses(), 0.0) {}

    bool stopped() const noexcept { return stopped_; }
    std::int64_t time() const noexcept { return t_; }
    std::size_t ml_hypothesis() const noexcept { return ml_; }
    const std::vector<double>& log_likelihoods() const noexcept { return log_likelihoods_; }
    // Sum over past steps of cost[i][experiment chosen], for each i.
    const std::vector<double>& accumulated_cost() const noexcept { return accumulated_cost_; }

    std::size_t decision() const {
        if (!stopped_) throw Error("decision() on a running oracle test");
        return ml_;
    }

    // Perform one experiment: `next_outcome(u)` must return the observed
    // symbol; `policy_rng` feeds only the q* draw, keeping policy and
    // environment randomness on separate streams.
    template <typename Outcome>
    void step(Outcome&& next_outcome, Rng& policy_rng) {
        if (stopped_) throw StepAfterStop("step() on a stopped oracle test");
        const std::size_t num_experiments = model_->num_experiments();
        std::size_t u;
        if (schedule_.claims(t_ + 1)) {
            u = static_cast<std::size_t>(exploration_counter_ %
                                         static_cast<std::int64_t>(num_experiments));
            ++exploration_counter_;
        } else {
            u = policy_rng.sample(policy_->selections[ml_].q_star);
        }
        const std::size_t z = next_outcome(u);

        const std::size_t num_hyp = model_->num_hypotheses();
        for (std::size_t i = 0; i < num_hyp; ++i) {
            log_likelihoods_[i] += policy_->log_p[i][u][z];
            accumulated_cost_[i] += model_->cost[i][u];
        }
        ++t_;

        ml_ = 0;
        for (std::size_t i = 1; i < num_hyp; ++i)
            if (log_likelihoods_[i] > log_likelihoods_[ml_]) ml_ = i;

        double closest_rival = -1e300;
        for (std::size_t j = 0; j < num_hyp; ++j) {
            if (j == ml_) continue;
            if (log_likelihoods_[j] > closest_rival) closest_rival = log_likelihoods_[j];
        }
        if (log_likelihoods_[ml_] - closest_rival > log_a_prime_) stopped_ = true;
    }

private:
    static double validate_threshold(double a_prime) {
        if (!(a_prime > 1.0)) throw ConfigError("oracle threshold a' must exceed 1");
        return std::log(a_prime);
    }

    const ExperimentModel* model_;
    const OraclePolicy* policy_;
    double log_a_prime_;
    ExplorationSchedule schedule_;
    std::vector<double> log_likelihoods_;
    std::vector<double> accumulated_cost_;
    std::int64_t t_ = 0;
    std::int64_t exploration_counter_ = 0;
    std::size_t ml_ = 0;
    bool stopped_ = false;
};

struct OracleResult {
    std::size_t decision;
    std::int64_t steps;
    std::vector<double> accumulated_cost;
};

// Drive a fresh run to its decision. `max_steps` is a safety cap against
// misconfigured models; hitting it throws HorizonExceeded.
template <typename Outcome>
OracleResult run_oracle(const ExperimentModel& model, const OraclePolicy& policy,
                        double a_prime, double b, Outcome&& next_outcome,
                        Rng& policy_rng, std::int64_t max_steps = 10'000'000) {
    ChernoffRun run(model, policy, a_prime, b);
    while (!run.stopped()) {
        if (run.time() >= max_steps)
            throw HorizonExceeded("oracle test exceeded its step cap");
        run.step(next_outcome, policy_rng);
    }
    return {run.decision(), run.time(), run.accumulated_cost()};
}

}  // namespace searchstop
