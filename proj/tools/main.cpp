#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "graphcodes/extremal.hpp"
#include "graphcodes/graphcode.hpp"
#include "graphcodes/harness.hpp"
#include "graphcodes/json_io.hpp"
#include "graphcodes/plurality.hpp"

using namespace graphcodes;

namespace {

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out_path, j);
}

std::string rate_string(const GraphCode& gc) {
  const auto r = gc.rate();
  if (!r) return "irrational";
  std::ostringstream out;
  out << *r;
  return out.str();
}

nlohmann::json word_values(const LeftWord& w) {
  nlohmann::json values = nlohmann::json::array();
  for (std::uint32_t l = 0; l < w.n; ++l) {
    const auto t = w.tuple(l);
    values.push_back(std::vector<int>(t.begin(), t.end()));
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-concatenated error-correcting codes: build, certify, decode, measure"};
  app.require_subcommand(1);
  int exit_code = 0;

  // build-graph
  struct {
    std::uint32_t n_left = 0, n_right = 0, degree = 0, k = 0, t = 3;
    double delta = 0.5;
    std::uint64_t seed = 0, attempts = 50, trials = 500;
    std::string kind = "disperser", certify = "auto", out, cert_out;
    bool plan = false;
  } bgo;
  auto* bg = app.add_subcommand("build-graph", "Sample a left-regular bipartite graph");
  bg->add_option("--n-left", bgo.n_left, "number of left vertices")->required();
  bg->add_option("--out", bgo.out, "output graph file")->required();
  bg->add_option("--seed", bgo.seed, "root seed");
  bg->add_flag("--plan", bgo.plan, "derive degree and n-right from (k, delta), then certify");
  bg->add_option("--kind", bgo.kind)->check(CLI::IsMember({"disperser", "multiset"}));
  bg->add_option("--k", bgo.k, "disperser parameter k");
  bg->add_option("--delta", bgo.delta, "disperser parameter delta");
  bg->add_option("--n-right", bgo.n_right, "number of right vertices (explicit mode)");
  bg->add_option("--degree", bgo.degree, "left degree (explicit mode)");
  bg->add_option("--cert-out", bgo.cert_out, "write the certificate here (planned mode)");
  bg->add_option("--attempts", bgo.attempts, "planned mode: sampling attempts");
  bg->add_option("--trials", bgo.trials, "planned mode: randomized refutation trials");
  bg->add_option("--t", bgo.t, "multiset family size cap");
  bg->add_option("--certify", bgo.certify)->check(CLI::IsMember({"auto", "randomized"}));
  bg->callback([&] {
    if (bgo.plan) {
      DisperserSpec spec;
      spec.k = bgo.k;
      spec.delta = bgo.delta;
      spec.kind = bgo.kind == "multiset" ? DisperserKind::multiset : DisperserKind::plain;
      const PlannedParams pp = spec.kind == DisperserKind::plain
                                   ? plan_disperser_params(bgo.n_left, spec.k, spec.delta)
                                   : plan_multiset_params(bgo.n_left, spec.k, spec.delta);
      SampleOptions so;
      so.seed = bgo.seed;
      so.attempt_budget = bgo.attempts;
      so.refute_trials = bgo.trials;
      so.t_max = bgo.t;
      so.force_randomized = bgo.certify == "randomized";
      auto sampled = sample_certified(bgo.n_left, pp.n_right, pp.degree, spec, so);
      save_json_file(bgo.out, graph_to_json(sampled.graph));
      if (!bgo.cert_out.empty())
        save_json_file(bgo.cert_out, certificate_to_json(sampled.certificate));
      std::cout << "graph " << bgo.n_left << "x" << pp.n_right << " degree " << pp.degree
                << ", verdict " << verdict_name(sampled.certificate.verdict) << " after "
                << sampled.attempts_used << " attempt(s), entropy loss "
                << entropy_loss(sampled.graph, spec.k) << "\n";
    } else {
      if (bgo.n_right == 0 || bgo.degree == 0)
        throw Error("explicit mode needs --n-right and --degree (or pass --plan)");
      const auto g = sample_left_regular(bgo.n_left, bgo.n_right, bgo.degree, bgo.seed);
      save_json_file(bgo.out, graph_to_json(g));
      std::cout << "graph " << bgo.n_left << "x" << bgo.n_right << " degree " << bgo.degree
                << " written to " << bgo.out << "\n";
    }
  });

  // certify
  struct {
    std::string graph, kind = "disperser", out;
    std::uint32_t k = 0, t = 3;
    double delta = 0.5;
    bool exhaustive = false;
    std::uint64_t trials = 1000, seed = 0, budget = kDefaultEnumBudget;
  } co;
  auto* ce = app.add_subcommand("certify", "Certify or refute a disperser property of a graph");
  ce->add_option("--graph", co.graph, "graph file")->required();
  ce->add_option("--kind", co.kind)->check(CLI::IsMember({"disperser", "multiset"}));
  ce->add_option("--k", co.k)->required();
  ce->add_option("--delta", co.delta)->required();
  ce->add_option("--t", co.t, "multiset family size (cap when exhaustive)");
  ce->add_flag("--exhaustive", co.exhaustive, "full enumeration instead of randomized refutation");
  ce->add_option("--trials", co.trials, "randomized refutation trials");
  ce->add_option("--seed", co.seed);
  ce->add_option("--budget", co.budget, "enumeration budget");
  ce->add_option("--out", co.out, "write the certificate here");
  ce->callback([&] {
    const auto g = graph_from_json(load_json_file(co.graph));
    DisperserSpec spec;
    spec.k = co.k;
    spec.delta = co.delta;
    spec.kind = co.kind == "multiset" ? DisperserKind::multiset : DisperserKind::plain;
    Certificate cert;
    if (spec.kind == DisperserKind::plain)
      cert = co.exhaustive ? certify_disperser_exhaustive(g, spec, co.budget)
                           : refute_disperser_randomized(g, spec, co.trials, co.seed);
    else
      cert = co.exhaustive ? certify_multiset_exhaustive(g, spec, co.t, co.budget)
                           : refute_multiset_randomized(g, spec, co.t, co.trials, co.seed);
    if (!co.out.empty()) save_json_file(co.out, certificate_to_json(cert));
    std::cout << co.kind << " (k=" << spec.k << ", delta=" << spec.delta
              << "): " << verdict_name(cert.verdict) << "\n";
    if (cert.verdict == Verdict::refuted) {
      if (cert.witness_subset) {
        std::cout << "witness subset:";
        for (const auto v : *cert.witness_subset) std::cout << " " << v;
        std::cout << "\n";
      }
      if (cert.witness_family)
        std::cout << "witness family of " << cert.witness_family->family.size() << " subsets, "
                  << cert.witness_family->offenders.size() << " offenders\n";
      exit_code = 1;
    }
  });

  // build-code
  struct {
    std::string config, out;
  } bco;
  auto* bc = app.add_subcommand("build-code", "Build a code bundle from a config file");
  bc->add_option("--config", bco.config)->required();
  bc->add_option("--out", bco.out, "output bundle file")->required();
  bc->callback([&] {
    const auto bundle = build_bundle(load_json_file(bco.config));
    save_json_file(bco.out, bundle_to_json(bundle));
    if (bundle.graph_code) {
      const auto& gc = *bundle.graph_code;
      std::cout << "graph code: N=" << gc.length() << " M=" << gc.graph().n_right()
                << " D=" << gc.degree() << " |C|=" << gc.size() << " rate " << rate_string(gc)
                << "\n";
    } else if (bundle.folded_code) {
      const auto& fc = *bundle.folded_code;
      std::cout << "folded code: N=" << fc.length() << " t=" << fc.t()
                << " dropped tail=" << fc.dropped_tail() << " |C|=" << fc.size() << "\n";
    }
  });

  // encode
  struct {
    std::string code, out;
    std::uint64_t message = 0;
  } eo;
  auto* en = app.add_subcommand("encode", "Encode a message index");
  en->add_option("--code", eo.code, "bundle file")->required();
  en->add_option("--message", eo.message, "message index")->required();
  en->add_option("--out", eo.out, "output word file (stdout when omitted)");
  en->callback([&] {
    const auto bundle = bundle_from_json(load_json_file(eo.code));
    if (bundle.graph_code) {
      const auto w = bundle.graph_code->encode_index(eo.message);
      emit(left_word_to_json(w, bundle.graph_code->alphabet_q()), eo.out);
    } else {
      const auto w = bundle.folded_code->encode_index(eo.message);
      emit(folded_word_to_json(w, bundle.folded_code->branch1().alphabet_q()), eo.out);
    }
  });

  // decode
  struct {
    std::string code, word, mode = "unique", out;
    std::uint32_t k = 0, ell = 0;
    double rho = -1.0, gamma = -1.0;
  } dco;
  auto* de = app.add_subcommand("decode", "Decode a received word file");
  de->add_option("--code", dco.code, "bundle file")->required();
  de->add_option("--word", dco.word, "received word file")->required();
  de->add_option("--mode", dco.mode)->check(CLI::IsMember({"unique", "list", "fold"}));
  de->add_option("--k", dco.k, "override the bundle's k");
  de->add_option("--ell", dco.ell, "override the bundle's ell");
  de->add_option("--rho", dco.rho, "override the bundle's rho");
  de->add_option("--gamma", dco.gamma, "override the bundle's gamma");
  de->add_option("--out", dco.out, "output file (stdout when omitted)");
  de->callback([&] {
    const auto bundle = bundle_from_json(load_json_file(dco.code));
    const std::uint32_t k = dco.k ? dco.k : bundle.k;
    const std::uint32_t ell = dco.ell ? dco.ell : bundle.ell;
    const double rho = dco.rho >= 0 ? dco.rho : bundle.rho;
    const double gamma = dco.gamma >= 0 ? dco.gamma : bundle.gamma;
    if (dco.mode == "fold") {
      if (!bundle.folded_code) throw Error("fold mode needs a folded bundle");
      const auto y = folded_received_from_json(load_json_file(dco.word));
      ListDecodeOptions lo;
      lo.k = k;
      lo.ell = ell;
      lo.rho = rho;
      const auto res = fold_list_decode(*bundle.folded_code, y, gamma, lo);
      nlohmann::json accepted = nlohmann::json::array();
      for (const auto& cand : res.accepted)
        accepted.push_back(std::vector<int>(cand.mother_codeword.begin(),
                                            cand.mother_codeword.end()));
      emit({{"count", res.accepted.size()}, {"accepted_mother_codewords", accepted}}, dco.out);
      return;
    }
    if (!bundle.graph_code) throw Error(dco.mode + " mode needs a graph bundle");
    const auto y = received_from_json(load_json_file(dco.word));
    if (dco.mode == "unique") {
      UniqueDecodeOptions uo;
      uo.k = k;
      const auto res = unique_decode(*bundle.graph_code, y, uo);
      nlohmann::json j;
      j["success"] = res.codeword.has_value();
      j["erasure_iterations"] = res.erasure_iterations;
      j["final_half_distance"] = res.final_half_distance;
      if (res.codeword) {
        j["mother_codeword"] =
            std::vector<int>(res.mother_codeword->begin(), res.mother_codeword->end());
        j["values"] = word_values(*res.codeword);
      }
      emit(j, dco.out);
    } else {
      ListDecodeOptions lo;
      lo.k = k;
      lo.ell = ell;
      lo.rho = rho;
      const auto res = list_decode(*bundle.graph_code, y, lo);
      nlohmann::json accepted = nlohmann::json::array();
      for (const auto& cand : res.accepted)
        accepted.push_back(std::vector<int>(cand.mother_codeword.begin(),
                                            cand.mother_codeword.end()));
      emit({{"count", res.accepted.size()},
            {"accepted_mother_codewords", accepted},
            {"phase1_erased", res.phase1_erased},
            {"phase2_iterations", res.phase2_iterations}},
           dco.out);
    }
  });

  // trial
  struct {
    std::string config, out = "out";
  } to;
  auto* tr = app.add_subcommand("trial", "Run a configured experiment and write reports");
  tr->add_option("--config", to.config)->required();
  tr->add_option("--out", to.out, "report directory");
  tr->callback([&] {
    const auto config = load_json_file(to.config);
    if (config.contains("experiment") &&
        config.at("experiment").value("kind", std::string()) == "scaling")
      throw Error("scaling configs run under the scaling subcommand");
    run_experiment(config, to.out);
    std::cout << "report written to " << to.out << "/report.json\n";
  });

  // plurality-scan
  struct {
    std::string code, out;
    std::uint32_t L = 2, k = 0;
    bool sampled = false;
    std::uint64_t trials = 1000, seed = 0;
  } po;
  auto* pl = app.add_subcommand("plurality-scan", "Scan plurality sums over L-subsets of a code");
  pl->add_option("--code", po.code, "bundle file")->required();
  pl->add_option("--L", po.L, "subset size")->required();
  pl->add_option("--k", po.k, "agreement parameter for the reported bound");
  pl->add_flag("--sampled", po.sampled, "sampled scan instead of exhaustive");
  pl->add_option("--trials", po.trials, "sampled mode trials");
  pl->add_option("--seed", po.seed);
  pl->add_option("--out", po.out, "output file (stdout when omitted)");
  pl->callback([&] {
    const auto bundle = bundle_from_json(load_json_file(po.code));
    if (!bundle.graph_code) throw Error("plurality-scan needs a graph bundle");
    const auto& gc = *bundle.graph_code;
    std::vector<LeftWord> words;
    for (const auto& w : gc.mother().codewords()) words.push_back(spread_unchecked(gc, w));
    ScanOptions so;
    so.mode = po.sampled ? ScanMode::sampled : ScanMode::exhaustive;
    so.trials = po.trials;
    so.seed = po.seed;
    const auto res = scan_plurality(pack_tuple_words(words), po.L, so);
    const std::uint32_t k = po.k ? po.k : bundle.k;
    const std::uint64_t bound = gc.length() + choose(po.L, 2) * k;
    emit({{"L", po.L},
          {"worst_sum", res.sum},
          {"bound", bound},
          {"holds", res.sum <= bound},
          {"witness", res.witness}},
         po.out);
  });

  // scaling
  struct {
    std::string config, out = "out";
  } so_;
  auto* sc = app.add_subcommand("scaling", "Measure decode-time scaling for a configured family");
  sc->add_option("--config", so_.config)->required();
  sc->add_option("--out", so_.out, "report directory");
  sc->callback([&] {
    const auto config = load_json_file(so_.config);
    if (!config.contains("experiment") ||
        config.at("experiment").value("kind", std::string()) != "scaling")
      throw Error("scaling needs a config with experiment.kind = scaling");
    run_experiment(config, so_.out);
    std::cout << "report written to " << so_.out << "/report.json\n";
  });

  // report
  struct {
    std::string in, csv;
  } ro;
  auto* re = app.add_subcommand("report", "Summarize a report file");
  re->add_option("--in", ro.in, "report.json")->required();
  re->add_option("--csv", ro.csv, "re-emit the cell grid as CSV");
  re->callback([&] {
    const auto j = load_json_file(ro.in);
    const auto kind = j.value("kind", std::string("?"));
    std::cout << "kind: " << kind << "\n";
    if (j.contains("generated_at"))
      std::cout << "generated: " << j.at("generated_at").get<std::string>() << "\n";
    if (!j.contains("results")) return;
    const auto& res = j.at("results");
    if (res.contains("cells")) {
      std::uint64_t wrong = 0, in_budget_cells = 0, in_budget_ok = 0;
      for (const auto& c : res.at("cells")) {
        wrong += c.at("wrong_decodes").get<std::uint64_t>();
        if (c.at("in_budget").get<bool>()) {
          ++in_budget_cells;
          if (c.at("successes") == c.at("trials")) ++in_budget_ok;
        }
      }
      std::cout << res.at("cells").size() << " cells, " << in_budget_ok << "/" << in_budget_cells
                << " in-budget cells at 100% success, " << wrong << " wrong decodes\n";
      if (!ro.csv.empty()) {
        std::ofstream out(ro.csv);
        if (!out) throw Error("cannot write " + ro.csv);
        out << "e,s,trials,successes,mean_list,max_list,mean_ms\n";
        for (const auto& c : res.at("cells"))
          out << c.at("e").get<std::uint64_t>() << ',' << c.at("s").get<std::uint64_t>() << ','
              << c.at("trials").get<std::uint64_t>() << ','
              << c.at("successes").get<std::uint64_t>() << ','
              << c.at("mean_list").get<double>() << ',' << c.at("max_list").get<std::uint64_t>()
              << ',' << c.at("mean_ms").get<double>() << '\n';
      }
    } else if (res.contains("exponent")) {
      std::cout << "fitted exponent: " << res.at("exponent").get<double>() << "\n";
      for (const auto& p : res.at("points"))
        std::cout << "  n=" << p.at("n").get<std::uint64_t>()
                  << " mean_ms=" << p.at("mean_ms").get<double>() << "\n";
    } else {
      std::cout << res.dump(2) << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
