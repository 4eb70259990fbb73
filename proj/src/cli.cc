/*
 * Copyright 2026 The probstream Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "probstream/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "probstream/adversary.h"
#include "probstream/automaton.h"
#include "probstream/protocols.h"
#include "probstream/stream_file.h"
#include "probstream/streaming.h"
#include "probstream/threshold.h"
#include "probstream/window.h"

namespace probstream {

namespace {

using Json = nlohmann::ordered_json;

// Exact values above this many bits are printed in power form instead.
constexpr std::uint64_t kPrintBitCap = 4096;

struct Failure {
  std::string check;
  std::string detail;
};

// Flat key=value report, or JSON with the same keys.
class Report {
 public:
  template <typename T>
  void set(const std::string& key, T&& value) {
    body_[key] = std::forward<T>(value);
  }
  void fail(std::string check, std::string detail) {
    failures_.push_back(Failure{std::move(check), std::move(detail)});
  }
  void add_line(Json line) { lines_.push_back(std::move(line)); }
  bool ok() const { return failures_.empty(); }

  void emit(std::ostream& out, std::ostream& err, bool json) const {
    if (json) {
      Json doc = body_;
      if (!lines_.empty()) doc["trace"] = lines_;
      doc["pass"] = ok();
      Json f = Json::array();
      for (const auto& x : failures_) f.push_back({{"check", x.check}, {"detail", x.detail}});
      doc["failures"] = f;
      out << doc.dump(2) << "\n";
    } else {
      for (const auto& line : lines_) out << flat(line, " ") << "\n";
      out << flat(body_, "\n") << "\n";
      out << "pass=" << (ok() ? "true" : "false") << "\n";
    }
    for (const auto& x : failures_) err << "FAIL check=" << x.check << " " << x.detail << "\n";
  }

 private:
  static std::string flat(const Json& obj, const char* sep) {
    std::string s;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!s.empty()) s += sep;
      s += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return s;
  }

  Json body_ = Json::object();
  std::vector<Json> lines_;
  std::vector<Failure> failures_;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("PROBSTREAM_SEED");
  if (s == nullptr || *s == '\0') return 0;
  return std::stoull(s);
}

std::string render_exact(const Rational& x) {
  if (bit_size(x) <= kPrintBitCap) return to_string(x);
  return "(" + std::to_string(bit_size(x)) + "-bit fraction)";
}

std::string render_value(const ProbabilityValue& v) {
  if (v.fits_exact(kPrintBitCap)) return to_string(v.to_exact(kPrintBitCap));
  return v.to_string();
}

std::uint64_t max_bit_size(const std::vector<Probability>& s) {
  std::uint64_t b = 1;
  for (const auto& q : s) b = std::max(b, bit_size(q));
  return b;
}

StreamFile load_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return parse_stream(in);
  return read_stream_file(path);
}

struct CommonFlags {
  std::string input;
  bool json = false;
  bool oracle = false;
  int digits = 10;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "stream file (default: standard input)");
  cmd->add_flag("--json", f.json, "structured output");
  cmd->add_flag("--oracle", f.oracle, "check the guarantee against exact arithmetic");
  cmd->add_option("--digits", f.digits, "significant digits of decimal renderings")
      ->check(CLI::Range(1, 1000));
}

// approx ------------------------------------------------------------------

struct ApproxFlags {
  CommonFlags common;
  std::string eps;
  std::uint64_t n = 0;
  std::uint64_t b = 0;
  std::uint64_t copies = 1;
};

int cmd_approx(const ApproxFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const StreamFile file = load_input(f.common.input, in);
  const auto& stream = file.elements;
  const std::uint64_t n = f.n ? f.n : std::max<std::uint64_t>(1, stream.size());
  const std::uint64_t b = f.b ? f.b : max_bit_size(stream);
  const AppConfig cfg = make_app_config(n, b, parse_fraction(f.eps));

  AppAutomaton app(cfg);
  app.run(stream);
  ProbabilityValue output = app.output();
  if (f.copies != 1) {
    auto amplified = amplify(app_factory(cfg), AmplifierConfig{f.copies, AmplifierMode::median})(env_seed());
    amplified->run(stream);
    output = amplified->output();
  }
  const auto& st = app.state();
  const AppSpaceReport space = app_space_report(cfg, st);

  Report r;
  r.set("algorithm", "app");
  r.set("n", n);
  r.set("b", b);
  r.set("eps", to_string(cfg.approx.epsilon()));
  r.set("copies", f.copies);
  r.set("count", st.count);
  r.set("saw_zero", st.saw_zero);
  r.set("base", to_string(cfg.approx.base()));
  r.set("index_sum", st.index_sum.get_str());
  r.set("output", render_value(output));
  r.set("output_decimal", output.decimal(f.common.digits));
  r.set("output_decimal_exact", false);
  r.set("state_bits", space.state_bits);
  r.set("index_bits", space.index_bits);
  r.set("formula_bound_bits", space.formula_bound_bits);
  r.set("element_index_bound", to_string(space.element_index_bound));
  r.set("sum_bound", to_string(space.sum_bound));
  r.set("max_element_index", st.max_index.get_str());
  r.set("bound_check", space.within_bounds);
  if (!space.within_bounds) r.fail("space_bound", "index_sum=" + st.index_sum.get_str());
  if (f.common.oracle) {
    const Rational p = exact_product(stream);
    const bool pass = sgn(p) == 0 ? output.is_zero() : within_band(output, p, cfg.approx.epsilon());
    r.set("oracle_product", render_exact(p));
    r.set("oracle_product_decimal", ProbabilityValue::exact(p).decimal(f.common.digits));
    r.set("oracle_pass", pass);
    if (!pass) r.fail("oracle_band", "output=" + output.to_string());
  }
  r.emit(out, err, f.common.json);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

// threshold ---------------------------------------------------------------

struct ThresholdFlags {
  CommonFlags common;
  std::string mode = "primes";
  std::uint64_t n = 0;
  std::uint64_t b = 0;
  std::string threshold;
};

int cmd_threshold(const ThresholdFlags& f, std::istream& in, std::ostream& out,
                  std::ostream& err) {
  StreamFile file = load_input(f.common.input, in);
  Probability t;
  std::vector<Probability> stream = file.elements;
  if (!f.threshold.empty()) {
    t = Probability::from_rational(parse_fraction(f.threshold));
  } else if (file.threshold) {
    t = *file.threshold;
  } else {
    if (stream.empty()) throw std::invalid_argument("the stream has no threshold");
    t = stream.front();
    stream.erase(stream.begin());
  }
  std::vector<Probability> all = stream;
  all.push_back(t);
  const std::uint64_t n = f.n ? f.n : std::max<std::uint64_t>(1, stream.size());
  const std::uint64_t b = f.b ? f.b : max_bit_size(all);
  TppMode mode;
  if (f.mode == "storeall") {
    mode = TppMode::store_all;
  } else if (f.mode == "primes") {
    mode = TppMode::prime_vector;
  } else {
    throw std::invalid_argument("unknown mode '" + f.mode + "'");
  }
  const TppConfig cfg = TppConfig::make(n, b, mode);
  TppAutomaton tpp(cfg);
  tpp.step(t);
  tpp.run(stream);
  const ThresholdState& st = *tpp.state();
  const bool decision = tpp.output();
  const TppSpaceReport space = tpp_space_report(cfg, st);

  Report r;
  r.set("algorithm", mode == TppMode::store_all ? "tpp-storeall" : "tpp-primes");
  r.set("n", n);
  r.set("b", b);
  r.set("threshold", t.to_string());
  r.set("count", st.count);
  r.set("decision", decision ? 1 : 0);
  r.set("early_exit", st.early_exit);
  r.set("saw_zero", st.saw_zero);
  r.set("state_bits", space.state_bits);
  r.set("store_all_bound_bits", space.store_all_bound);
  if (mode == TppMode::prime_vector) {
    r.set("tracked_primes", space.tracked_primes);
    r.set("exponent_bound", space.exponent_bound);
    r.set("effective_count_cap", space.effective_count_cap.get_str());
    r.set("small_factor_count", st.small_factor_count.get_str());
  }
  if (f.common.oracle) {
    const Rational p = exact_product(stream);
    const bool truth = p < t.value();
    r.set("oracle_product", render_exact(p));
    r.set("oracle_decision", truth ? 1 : 0);
    r.set("oracle_pass", truth == decision);
    if (truth != decision) r.fail("oracle_decision", "decision=" + std::to_string(decision));
    if (st.early_exit && t.value() * pow2(b) >= 1 && !truth) {
      r.fail("early_exit", "exit fired with product >= threshold");
    }
  }
  r.emit(out, err, f.common.json);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

// window ------------------------------------------------------------------

struct WindowFlags {
  CommonFlags common;
  std::string eps;
  std::uint64_t m = 1;
  std::uint64_t b = 0;
  bool trace = false;
  bool naive = false;
};

int cmd_window(const WindowFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const StreamFile file = load_input(f.common.input, in);
  const auto& stream = file.elements;
  const std::uint64_t b = f.b ? f.b : max_bit_size(stream);
  const WindowParams params = WindowParams::make(f.m, b, parse_fraction(f.eps));
  const Rational& eps = params.approx.epsilon();

  WindowState st = swapp_init(params);
  NaiveWindowState naive = swapp_naive_init(params);
  Report r;
  bool pass = true;
  auto check_step = [&](std::uint64_t step, const ProbabilityValue& output, const Rational& w) {
    const bool ok = sgn(w) == 0 ? output.is_zero() : within_band(output, w, eps);
    if (!ok) {
      pass = false;
      r.fail("window_band", "step=" + std::to_string(step) + " output=" + output.to_string());
    }
    return ok;
  };
  for (std::size_t k = 0; k < stream.size(); ++k) {
    st = swapp_step(params, st, stream[k]);
    naive = swapp_naive_step(params, naive, stream[k]);
    const ProbabilityValue output = f.naive ? ProbabilityValue::exact(swapp_naive_output(naive))
                                            : swapp_output(params, st);
    if (f.trace) {
      Json line;
      line["step"] = k + 1;
      line["element"] = stream[k].to_string();
      line["output"] = render_value(output);
      line["output_decimal"] = output.decimal(f.common.digits);
      if (f.common.oracle) {
        const Rational w = swapp_naive_output(naive);
        line["oracle_window"] = render_exact(w);
        line["oracle_pass"] = check_step(k + 1, output, w);
      }
      r.add_line(line);
    } else if (f.common.oracle) {
      check_step(k + 1, output, swapp_naive_output(naive));
    }
  }
  const ProbabilityValue output = f.naive ? ProbabilityValue::exact(swapp_naive_output(naive))
                                          : swapp_output(params, st);
  const WindowSpaceReport space = swapp_space_report(params, st);
  r.set("algorithm", f.naive ? "swapp-naive" : "swapp");
  r.set("m", params.m);
  r.set("b", params.b);
  r.set("eps", to_string(eps));
  r.set("count", stream.size());
  r.set("base", to_string(params.approx.base()));
  r.set("index_sum", st.index_sum.get_str());
  r.set("zeros_in_window", st.zero_count);
  r.set("output", render_value(output));
  r.set("output_decimal", output.decimal(f.common.digits));
  r.set("output_decimal_exact", false);
  if (f.naive) {
    r.set("state_bits", swapp_naive_serialize(params, naive).size());
    r.set("bound_bits", 2 * params.m * params.b);
  } else {
    r.set("state_bits", space.state_bits);
    r.set("bound_bits", space.bound_bits);
    r.set("slot_index_bound", to_string(space.slot_index_bound));
    r.set("bound_check", space.within_bounds);
    if (!space.within_bounds) r.fail("space_bound", "state_bits=" + std::to_string(space.state_bits));
  }
  if (f.common.oracle) {
    const Rational w = swapp_naive_output(naive);
    r.set("oracle_window", render_exact(w));
    check_step(stream.size(), output, w);
    r.set("oracle_pass", pass);
  }
  r.emit(out, err, f.common.json);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

// gen ---------------------------------------------------------------------

struct GenFlags {
  std::string family;
  std::string eps = "1/3";
  std::uint64_t b = 2;
  std::uint64_t n = 4;
  std::string j = "0";
  std::uint64_t stride = 3;
  std::string gamma = "1/1";
  std::string out_path;
  bool json = false;
};

std::filesystem::path out_dir(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--out DIR is required for this family");
  std::filesystem::create_directories(path);
  return path;
}

// Writes the file, reads it back and checks the product survived.
void write_checked(const std::filesystem::path& p, const StreamFile& file,
                   const std::vector<std::string>& comment) {
  write_stream_file(p.string(), file, comment);
  const StreamFile back = read_stream_file(p.string());
  if (exact_product(back.elements) != exact_product(file.elements) ||
      back.threshold != file.threshold) {
    throw std::runtime_error("round trip of " + p.string() + " changed its contents");
  }
}

int cmd_gen(const GenFlags& f, std::ostream& out, std::ostream& err) {
  Report r;
  r.set("family", f.family);
  if (f.family == "claim1" || f.family == "appfool") {
    const Rational eps = parse_fraction(f.eps);
    const BucketStreamConfig cfg = make_bucket_stream_config(eps, f.b, f.n);
    r.set("eps", to_string(eps));
    r.set("b", f.b);
    r.set("n", f.n);
    r.set("k", cfg.k);
    r.set("y", cfg.y.get_str());
    std::string alphabet;
    for (const auto& q : cfg.alphabet()) alphabet += (alphabet.empty() ? "" : ",") + q.to_string();
    r.set("alphabet", alphabet);
    const Rational base = cfg.base();
    if (f.family == "claim1") {
      const BigInt j(f.j, 10);
      const Stream s = gen_bucket_stream(cfg, j);
      const Rational p = exact_product(s);
      const bool in_bucket = bucket_of_value(p, base).value == j;
      r.set("j", j.get_str());
      r.set("length", s.size());
      r.set("product", render_exact(p));
      r.set("in_bucket", in_bucket);
      if (!in_bucket) r.fail("bucket", "product left bucket " + j.get_str());
      if (r.ok()) {
        const std::vector<std::string> comment = {"bucket stream eps=" + to_string(eps) + " b=" +
                                                  std::to_string(f.b) + " n=" + std::to_string(f.n) +
                                                  " j=" + j.get_str()};
        if (f.out_path.empty()) {
          write_stream(out, StreamFile{std::nullopt, s});
          return kExitOk;
        }
        write_checked(f.out_path, StreamFile{std::nullopt, s}, comment);
        r.set("files", 1);
      }
    } else {
      const auto streams = gen_app_fooling_streams(cfg, f.stride);
      const auto violation = find_separation_violation(streams, eps);
      r.set("stride", f.stride);
      r.set("streams", streams.size());
      r.set("separation_holds", !violation.has_value());
      if (violation) {
        r.fail("separation", "pair=" + std::to_string(violation->first) + "," +
                                 std::to_string(violation->second));
      }
      for (const auto& fs : streams) {
        if (bucket_of_value(fs.product, base).value != fs.bucket) {
          r.fail("bucket", "stream for bucket " + fs.bucket.get_str());
        }
      }
      if (r.ok()) {
        const auto dir = out_dir(f.out_path);
        for (std::size_t k = 0; k < streams.size(); ++k) {
          write_checked(dir / ("stream_" + std::to_string(k) + ".txt"),
                        StreamFile{std::nullopt, streams[k].stream},
                        {"fooling stream " + std::to_string(k) + " bucket " +
                         streams[k].bucket.get_str()});
        }
        r.set("files", streams.size());
      }
    }
  } else if (f.family == "primes") {
    const PrimeFoolingFamily fam = gen_prime_family(f.n, f.b, parse_fraction(f.gamma));
    r.set("n", f.n);
    r.set("b", f.b);
    r.set("gamma", to_string(parse_fraction(f.gamma)));
    r.set("threshold", fam.threshold().to_string());
    std::string suffix_numbers;
    for (const auto& s : fam.suffix_numbers()) {
      suffix_numbers += (suffix_numbers.empty() ? "" : ",") + s.to_string();
    }
    r.set("suffix_numbers", suffix_numbers);
    r.set("telescopes", exact_product(fam.suffix_numbers()) == fam.threshold().value());
    r.set("words", fam.size());
    r.set("max_bit_size", fam.max_bit_size());
    r.set("bit_gate_holds", fam.bit_gate_holds());
    if (!fam.enumerable()) throw std::invalid_argument("family too large to write out");
    const auto dir = out_dir(f.out_path);
    for (std::uint64_t rank = 1; rank <= fam.size(); ++rank) {
      const Stream w = fam.word(rank);
      const Stream s = fam.suffix(w);
      if (exact_product(w) * exact_product(s) != fam.threshold().value()) {
        r.fail("suffix", "rank " + std::to_string(rank));
      }
      write_checked(dir / ("word_" + std::to_string(rank) + ".txt"),
                    StreamFile{fam.threshold(), w}, {"family word rank " + std::to_string(rank)});
      write_checked(dir / ("suffix_" + std::to_string(rank) + ".txt"), StreamFile{std::nullopt, s},
                    {"suffix for rank " + std::to_string(rank)});
    }
    r.set("files", 2 * fam.size());
  } else {
    throw std::invalid_argument("unknown family '" + f.family + "'");
  }
  r.emit(out, err, f.json);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

// protocol ----------------------------------------------------------------

struct ProtocolFlags {
  std::string reduction;
  std::string eps = "1/3";
  std::uint64_t b = 2;
  std::uint64_t n = 4;
  std::uint64_t m = 2;
  std::uint64_t i = 1;
  std::uint64_t j = 1;
  std::string gamma = "1/1";
  std::string mode = "primes";
  std::string word;
  std::string a = "1/1";
  bool sweep = false;
  bool json = false;
};

std::vector<Probability> parse_word(const std::string& text) {
  std::vector<Probability> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Probability::from_rational(parse_fraction(item)));
  return out;
}

void report_transcript(Report& r, const ProtocolTranscript& t) {
  r.set("protocol", t.protocol);
  r.set("alice_input", t.alice_input);
  r.set("bob_input", t.bob_input);
  r.set("message", t.message.to_string());
  r.set("message_bits", t.message_bits());
  for (std::size_t k = 0; k < t.bob_outputs.size(); ++k) {
    r.set("bob_output_" + std::to_string(k + 1), t.bob_outputs[k]);
  }
  for (const auto& [key, value] : t.details) r.set(key, value);
  r.set("decision", t.decision ? 1 : 0);
  r.set("expected", t.expected ? 1 : 0);
  if (!t.correct()) r.fail("decision", t.to_log_line());
}

void report_sweep(Report& r, const SweepReport& s) {
  r.set("protocol", s.protocol);
  r.set("instances", s.instances);
  r.set("correct", s.correct);
  r.set("trichotomy_holds", s.trichotomy_holds);
  r.set("max_message_bits", s.max_message_bits);
  std::ostringstream mean;
  mean.precision(6);
  mean << s.mean_message_bits;
  r.set("mean_message_bits", mean.str());
  std::ostringstream ref;
  ref.precision(6);
  ref << s.reference_bits;
  r.set("reference", s.reference_name);
  r.set("reference_bits", ref.str());
  for (const auto& line : s.failures) r.fail("sweep", line);
  if (!s.all_correct() && s.failures.empty()) r.fail("sweep", "incorrect decisions");
}

TppConfig family_tpp_config(const PrimeFoolingFamily& fam, const std::string& mode) {
  TppMode m;
  if (mode == "storeall") {
    m = TppMode::store_all;
  } else if (mode == "primes") {
    m = TppMode::prime_vector;
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "'");
  }
  return TppConfig::make(2 * fam.n(), fam.max_bit_size(), m);
}

int cmd_protocol(const ProtocolFlags& f, std::ostream& out, std::ostream& err) {
  Report r;
  const std::uint64_t seed = env_seed();
  if (f.reduction == "gt-app") {
    const Rational eps = parse_fraction(f.eps);
    const GtAppInstance inst = make_gt_app_instance(eps, f.b, f.n);
    const AppConfig app = make_app_config(2 * f.n, f.b, eps);
    const ApproxFactory factory = app_factory(app);
    r.set("eps", to_string(eps));
    r.set("b", f.b);
    r.set("n", f.n);
    r.set("y", inst.streams.y.get_str());
    r.set("indices", inst.max_index() + 1);
    r.set("app_bound_bits", app_space_report(app, app_init(app)).formula_bound_bits);
    if (f.sweep) {
      report_sweep(r, gt_app_sweep(factory, inst, seed));
    } else {
      report_transcript(r, gt_from_app(factory, inst, f.i, f.j, seed));
    }
  } else if (f.reduction == "gt-tpp") {
    const PrimeFoolingFamily fam = gen_prime_family(f.n, f.b, parse_fraction(f.gamma));
    const TppConfig cfg = family_tpp_config(fam, f.mode);
    const DecisionFactory factory = tpp_factory(cfg);
    r.set("n", f.n);
    r.set("b", f.b);
    r.set("mode", f.mode);
    r.set("automaton_b", cfg.stream().b);
    r.set("words", fam.size());
    if (f.sweep) {
      report_sweep(r, gt_tpp_sweep(factory, fam, seed));
    } else {
      report_transcript(r, gt_from_tpp(factory, fam, f.i, f.j, seed));
    }
  } else if (f.reduction == "igt-swapp") {
    const Rational eps = parse_fraction(f.eps);
    const IgtReductionConfig cfg = make_igt_config(eps, f.m, f.b);
    const ApproxFactory factory = window_factory(WindowParams::make(f.m, f.b, eps));
    std::string alphabet;
    for (const auto& q : cfg.alphabet) alphabet += (alphabet.empty() ? "" : ",") + q.to_string();
    r.set("eps", to_string(eps));
    r.set("m", f.m);
    r.set("b", f.b);
    r.set("alpha", cfg.alpha);
    r.set("c", cfg.c);
    r.set("alphabet", alphabet);
    if (f.sweep) {
      report_sweep(r, igt_sweep(factory, cfg, seed));
    } else {
      const auto word = parse_word(f.word);
      report_transcript(r, igt_from_swapp(factory, cfg, word, f.i,
                                          Probability::from_rational(parse_fraction(f.a)), seed));
    }
  } else {
    throw std::invalid_argument("unknown reduction '" + f.reduction + "'");
  }
  r.emit(out, err, f.json);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Streaming products of rational probabilities", "probstream"};
  app.require_subcommand(1);

  ApproxFlags approx;
  auto* c_approx = app.add_subcommand("approx", "approximate the product of a stream");
  add_common(c_approx, approx.common);
  c_approx->add_option("--eps", approx.eps, "approximation ratio r/s")->required();
  c_approx->add_option("--n", approx.n, "maximum stream length (default: the stream length)");
  c_approx->add_option("--b", approx.b, "maximum bit size (default: the largest in the stream)");
  c_approx->add_option("--copies", approx.copies, "odd number of independent copies (median)");

  ThresholdFlags threshold;
  auto* c_threshold = app.add_subcommand("threshold", "decide product < threshold");
  add_common(c_threshold, threshold.common);
  c_threshold->add_option("--mode", threshold.mode, "storeall or primes")
      ->check(CLI::IsMember({"storeall", "primes"}));
  c_threshold->add_option("--n", threshold.n, "maximum elements after the threshold");
  c_threshold->add_option("--b", threshold.b, "maximum bit size");
  c_threshold->add_option("--threshold", threshold.threshold, "threshold r/s");

  WindowFlags window;
  auto* c_window = app.add_subcommand("window", "approximate the product of the last m elements");
  add_common(c_window, window.common);
  c_window->add_option("--eps", window.eps, "approximation ratio r/s")->required();
  c_window->add_option("--m", window.m, "window size")->required();
  c_window->add_option("--b", window.b, "maximum bit size");
  c_window->add_flag("--trace", window.trace, "one line per element");
  c_window->add_flag("--naive", window.naive, "store the window verbatim");

  GenFlags gen;
  auto* c_gen = app.add_subcommand("gen", "write hard instances as stream files");
  c_gen->add_option("--family", gen.family, "claim1, primes or appfool")
      ->required()
      ->check(CLI::IsMember({"claim1", "primes", "appfool"}));
  c_gen->add_option("--eps", gen.eps, "approximation ratio (claim1, appfool)");
  c_gen->add_option("--b", gen.b, "bit size");
  c_gen->add_option("--n", gen.n, "length parameter");
  c_gen->add_option("--j", gen.j, "target bucket (claim1)");
  c_gen->add_option("--stride", gen.stride, "bucket stride (appfool)");
  c_gen->add_option("--gamma", gen.gamma, "bit budget slack (primes)");
  c_gen->add_option("--out", gen.out_path, "output file (claim1) or directory");
  c_gen->add_flag("--json", gen.json, "structured output");

  ProtocolFlags proto;
  auto* c_proto = app.add_subcommand("protocol", "simulate a one-way protocol");
  c_proto->add_option("--reduction", proto.reduction, "gt-app, gt-tpp or igt-swapp")
      ->required()
      ->check(CLI::IsMember({"gt-app", "gt-tpp", "igt-swapp"}));
  c_proto->add_option("--eps", proto.eps, "approximation ratio");
  c_proto->add_option("--b", proto.b, "bit size");
  c_proto->add_option("--n", proto.n, "length parameter");
  c_proto->add_option("--m", proto.m, "window size (igt-swapp)");
  c_proto->add_option("--i", proto.i, "Alice's index, or Bob's position for igt-swapp");
  c_proto->add_option("--j", proto.j, "Bob's index");
  c_proto->add_option("--gamma", proto.gamma, "bit budget slack (gt-tpp)");
  c_proto->add_option("--mode", proto.mode, "storeall or primes (gt-tpp)")
      ->check(CLI::IsMember({"storeall", "primes"}));
  c_proto->add_option("--word", proto.word, "Alice's word, comma separated (igt-swapp)");
  c_proto->add_option("--a", proto.a, "Bob's letter (igt-swapp)");
  c_proto->add_flag("--sweep", proto.sweep, "run every input pair");
  c_proto->add_flag("--json", proto.json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (c_approx->parsed()) return cmd_approx(approx, in, out, err);
    if (c_threshold->parsed()) return cmd_threshold(threshold, in, out, err);
    if (c_window->parsed()) return cmd_window(window, in, out, err);
    if (c_gen->parsed()) return cmd_gen(gen, out, err);
    if (c_proto->parsed()) return cmd_protocol(proto, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace probstream
