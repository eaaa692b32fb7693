// Copyright 2026 The wordseg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 runtime error.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wordseg/phoneme_dist.hpp"
#include "wordseg/runner.hpp"

namespace {

using namespace wordseg;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_boost(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw UsageError("--boost expects a number or 'inf'");
  }
}

// Enum-valued flags are kept as text and converted once parsing is done.
struct EnumFlags {
  std::string model = "unigram";
  std::string aggregate = "final";
  std::string init = "random";
  std::string seating = "tables";

  void apply(RunConfig& cfg) const {
    cfg.model = parse_model_kind(model);
    cfg.aggregate = parse_aggregate(aggregate);
    cfg.init = parse_init_mode(init);
    cfg.seating = seating == "types" ? Seating::types : Seating::tables;
  }
};

void add_common(CLI::App* sub, RunConfig& cfg, EnumFlags& flags) {
  sub->add_option("--model", flags.model, "unigram or bigram")
      ->check(CLI::IsMember({"unigram", "bigram"}));
  sub->add_option("--corpus", cfg.corpus_path, "corpus file, one utterance per line")
      ->check(CLI::ExistingFile);
  sub->add_option("--slice", cfg.slice, "use the first N utterances (0 = all)");
  sub->add_option("--alpha0", cfg.alpha0, "unigram-level concentration");
  sub->add_option("--alpha1", cfg.alpha1, "bigram-level concentration");
  sub->add_option("--p-hash", cfg.p_hash, "word-end probability per phoneme");
  sub->add_option("--rho", cfg.rho, "Beta prior on utterance ends");
  sub->add_option("--phoneme-dist", cfg.phoneme_dist, "empirical or uniform")
      ->check(CLI::IsMember({"empirical", "uniform"}));
  sub->add_option("--burn-in", cfg.schedule.burn_in, "annealed burn-in sweeps");
  sub->add_option("--iters", cfg.schedule.total_sampling, "sampling sweeps after burn-in");
  sub->add_option("--sample-every", cfg.schedule.sample_every, "sweeps between samples");
  sub->add_option("--gamma-max", cfg.schedule.gamma_max, "starting temperature");
  sub->add_option("--gamma-steps", cfg.schedule.gamma_steps, "temperature plateaus");
  sub->add_option("--seed", cfg.seed, "chain seed");
  sub->add_option("--aggregate", flags.aggregate, "final or marginal")
      ->check(CLI::IsMember({"final", "marginal"}));
  sub->add_option("--init", flags.init, "random, gold or none")
      ->check(CLI::IsMember({"random", "gold", "none"}));
  sub->add_option("--p-init", cfg.p_init, "boundary rate of the random initialization");
  sub->add_option("--seating", flags.seating, "bigram seating: tables or types")
      ->check(CLI::IsMember({"tables", "types"}));
  sub->add_option("--out", cfg.out_dir, "output directory");
}

void print_report(const RunResult& r) {
  if (r.report) std::cout << r.report->json() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian word segmentation by annealed Gibbs sampling"};
  app.set_config("--config", "", "INI or TOML file; flags override its values");
  app.require_subcommand(1);

  RunConfig cfg;
  EnumFlags flags;

  auto* segment = app.add_subcommand("segment", "segment a corpus and score it against gold");
  add_common(segment, cfg, flags);

  auto* sweep = app.add_subcommand("sweep", "grid of runs, one TSV row each");
  add_common(sweep, cfg, flags);
  std::vector<double> grid_alpha0, grid_alpha1, grid_p_hash;
  std::vector<std::uint64_t> seeds{0};
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--grid-alpha0", grid_alpha0, "alpha0 values")->delimiter(',');
  sweep->add_option("--grid-alpha1", grid_alpha1, "alpha1 values")->delimiter(',');
  sweep->add_option("--grid-p-hash", grid_p_hash, "p_hash values")->delimiter(',');
  sweep->add_option("--seeds", seeds, "seeds per grid point")->delimiter(',');
  sweep->add_option("--workers", workers, "concurrent runs");

  auto* perturb = app.add_subcommand("perturb", "start from gold with k random toggles");
  add_common(perturb, cfg, flags);
  std::size_t k = 1;
  perturb->add_option("-k,--k", k, "number of toggles");

  auto* vocab = app.add_subcommand("vocab", "sample with a partial known vocabulary");
  add_common(vocab, cfg, flags);
  std::string boost_text = "1";
  vocab->add_option("--vocab-size", cfg.vocab_size, "number of known word types");
  vocab->add_option("--boost", boost_text, "weight multiplier, or 'inf'");
  vocab->add_option("--vocab-seed", cfg.vocab_seed, "seed for choosing the vocabulary");

  auto* oracle = app.add_subcommand("oracle", "exact marginals beside Gibbs estimates");
  add_common(oracle, cfg, flags);

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  add_common(stats, cfg, flags);

  auto* generate = app.add_subcommand("generate", "sample a corpus from a model's prior");
  GenConfig gen;
  std::string gen_model = "unigram", p_dollar = "0.3", alphabet;
  std::string gen_out;
  generate->add_option("--model", gen_model)->check(CLI::IsMember({"unigram", "bigram"}));
  generate->add_option("--n-utterances", gen.n_utterances, "utterances to generate");
  generate->add_option("--p-dollar", p_dollar, "utterance-end probability, or 'prior'");
  generate->add_option("--alpha0", gen.params.alpha0);
  generate->add_option("--alpha1", gen.params.alpha1);
  generate->add_option("--p-hash", gen.params.p_hash);
  generate->add_option("--rho", gen.params.rho);
  generate->add_option("--alphabet", alphabet, "phonemes, drawn uniformly")->required();
  generate->add_option("--seed", gen.seed);
  generate->add_option("--out", gen_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    try {
      flags.apply(cfg);
      if (*segment) {
        print_report(cmd_segment(cfg));
      } else if (*sweep) {
        Grid grid;
        if (!grid_alpha0.empty()) grid["alpha0"] = grid_alpha0;
        if (!grid_alpha1.empty()) grid["alpha1"] = grid_alpha1;
        if (!grid_p_hash.empty()) grid["p_hash"] = grid_p_hash;
        const auto rows = cmd_sweep(cfg, grid, seeds, workers);
        std::cout << sweep_tsv(rows);
      } else if (*perturb) {
        print_report(cmd_perturb(cfg, k));
      } else if (*vocab) {
        cfg.boost = parse_boost(boost_text);
        print_report(cmd_vocab(cfg));
      } else if (*oracle) {
        std::cout << oracle_tsv(cmd_oracle(cfg));
      } else if (*stats) {
        std::cout << cmd_stats(cfg) << '\n';
      } else if (*generate) {
        if (p_dollar == "prior") {
          gen.p_dollar.reset();
        } else {
          gen.p_dollar = std::stod(p_dollar);
        }
        gen.params.phonemes = uniform_phoneme_dist(alphabet);
        const GenResult res = cmd_generate(gen, parse_model_kind(gen_model), gen_out);
        if (gen_out.empty()) std::cout << render(res.corpus, res.corpus.gold());
      }
    } catch (const std::invalid_argument& e) {
      std::cerr << "wordseg: configuration error: " << e.what() << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "wordseg: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
