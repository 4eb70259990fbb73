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

#include "probstream/protocols.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probstream {

namespace {

// Bob's automata use a seed stream separate from Alice's.
constexpr std::uint64_t kBobSeedOffset = 0x9e3779b97f4a7c15ULL;

std::string join(const std::vector<Probability>& word) {
  std::string out;
  for (const auto& q : word) {
    if (!out.empty()) out += ",";
    out += q.to_string();
  }
  return out.empty() ? "-" : out;
}

void accumulate(SweepReport& r, const ProtocolTranscript& t) {
  r.instances += 1;
  if (t.correct()) {
    r.correct += 1;
  } else if (r.failures.size() < 16) {
    r.failures.push_back(t.to_log_line());
  }
  r.max_message_bits = std::max<std::uint64_t>(r.max_message_bits, t.message_bits());
  r.mean_message_bits += static_cast<double>(t.message_bits());
}

void finish(SweepReport& r) {
  if (r.instances > 0) r.mean_message_bits /= static_cast<double>(r.instances);
}

}  // namespace

std::string ProtocolTranscript::to_log_line() const {
  std::string line = "protocol=" + protocol + " alice=" + alice_input + " bob=" + bob_input +
                     " message_bits=" + std::to_string(message_bits()) +
                     " decision=" + (decision ? "1" : "0") + " expected=" + (expected ? "1" : "0");
  for (std::size_t k = 0; k < bob_outputs.size(); ++k) {
    line += " out" + std::to_string(k + 1) + "=" + bob_outputs[k];
  }
  for (const auto& [key, value] : details) line += " " + key + "=" + value;
  return line;
}

GtAppInstance make_gt_app_instance(const Rational& epsilon, std::uint64_t b, std::uint64_t n) {
  GtAppInstance inst;
  inst.streams = make_bucket_stream_config(epsilon, b, n);
  inst.fooling = gen_app_fooling_streams(inst.streams, 5);
  return inst;
}

BitString gt_app_alice(const ApproxFactory& factory, const GtAppInstance& inst, std::uint64_t i,
                       std::uint64_t seed) {
  if (i > inst.max_index()) throw std::out_of_range("Alice's index is out of range");
  auto a = factory(seed);
  a->run(inst.fooling[i].stream);
  return a->serialize_state();
}

GtAppBobResult gt_app_bob(const ApproxFactory& factory, const GtAppInstance& inst,
                          const BitString& message, std::uint64_t j, std::uint64_t seed) {
  if (j > inst.max_index()) throw std::out_of_range("Bob's index is out of range");
  auto received = factory(seed + kBobSeedOffset);
  received->load_state(message);
  auto own = factory(seed + 2 * kBobSeedOffset);
  own->run(inst.fooling[j].stream);
  GtAppBobResult r;
  r.alice_value = received->output();
  r.bob_value = own->output();
  const Rational base = inst.streams.base();
  r.alice_bucket = bucket_of_value(r.alice_value, base).value;
  r.bob_bucket = bucket_of_value(r.bob_value, base).value;
  r.decision = r.alice_bucket - r.bob_bucket >= 3;
  return r;
}

ProtocolTranscript gt_from_app(const ApproxFactory& factory, const GtAppInstance& inst,
                               std::uint64_t i, std::uint64_t j, std::uint64_t seed) {
  ProtocolTranscript t;
  t.protocol = "gt-app";
  t.alice_input = std::to_string(i);
  t.bob_input = std::to_string(j);
  t.message = gt_app_alice(factory, inst, i, seed);
  const GtAppBobResult r = gt_app_bob(factory, inst, t.message, j, seed);
  t.bob_outputs = {r.alice_value.to_string(), r.bob_value.to_string()};
  t.decision = r.decision;
  t.expected = i > j;
  const BigInt distance = r.alice_bucket - r.bob_bucket;
  t.details = {{"bucket_i", r.alice_bucket.get_str()},
               {"bucket_j", r.bob_bucket.get_str()},
               {"distance", distance.get_str()}};
  return t;
}

BitString gt_tpp_alice(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                       std::uint64_t i, std::uint64_t seed) {
  const Stream word = fam.word(i);
  auto a = factory(seed);
  a->step(fam.threshold());
  a->run(word);
  return a->serialize_state();
}

bool gt_tpp_bob(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                const BitString& message, std::uint64_t j, std::uint64_t seed) {
  const Stream suffix = fam.suffix(fam.word(j));
  auto a = factory(seed + kBobSeedOffset);
  a->load_state(message);
  a->run(suffix);
  return a->output();
}

ProtocolTranscript gt_from_tpp(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                               std::uint64_t i, std::uint64_t j, std::uint64_t seed) {
  ProtocolTranscript t;
  t.protocol = "gt-tpp";
  t.alice_input = std::to_string(i);
  t.bob_input = std::to_string(j);
  t.message = gt_tpp_alice(factory, fam, i, seed);
  t.decision = gt_tpp_bob(factory, fam, t.message, j, seed);
  t.expected = i > j;
  t.bob_outputs = {t.decision ? "1" : "0"};
  t.details = {{"word_i", join(fam.word(i))}, {"word_j", join(fam.word(j))}};
  return t;
}

IgtReductionConfig make_igt_config(const Rational& epsilon, std::uint64_t m, std::uint64_t b) {
  check_epsilon(epsilon);
  if (m == 0 || b == 0) throw std::invalid_argument("m and b must be >= 1");
  IgtReductionConfig cfg;
  cfg.epsilon = epsilon;
  cfg.m = m;
  cfg.b = b;
  const Rational keep4 = pow(1 - epsilon, 4);
  std::uint64_t alpha = 0;
  while (Rational(pow2(alpha)) * keep4 < 1) ++alpha;
  cfg.alpha = alpha;
  cfg.c = b / alpha;
  if (cfg.c == 0) {
    throw std::invalid_argument("b = " + std::to_string(b) + " is below alpha = " +
                                std::to_string(alpha) + ": the alphabet is empty");
  }
  for (std::uint64_t i = 0; i < cfg.c; ++i) {
    cfg.alphabet.push_back(Probability::make(BigInt(1), pow2(i * alpha)));
  }
  return cfg;
}

BitString igt_alice(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                    const std::vector<Probability>& word, std::uint64_t seed) {
  if (word.size() != cfg.m) throw std::invalid_argument("Alice's word must have length m");
  for (const auto& q : word) {
    if (std::find(cfg.alphabet.begin(), cfg.alphabet.end(), q) == cfg.alphabet.end()) {
      throw std::invalid_argument(q.to_string() + " is not in the alphabet");
    }
  }
  auto a = factory(seed);
  a->run(word);
  return a->serialize_state();
}

IgtBobResult igt_bob(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                     const BitString& message, std::uint64_t index, const Probability& a,
                     std::uint64_t seed) {
  if (index == 0 || index > cfg.m) throw std::out_of_range("index outside 1..m");
  if (std::find(cfg.alphabet.begin(), cfg.alphabet.end(), a) == cfg.alphabet.end()) {
    throw std::invalid_argument(a.to_string() + " is not in the alphabet");
  }
  auto kept = factory(seed + kBobSeedOffset);
  auto shifted = factory(seed + 2 * kBobSeedOffset);
  kept->load_state(message);
  shifted->load_state(message);
  for (std::uint64_t k = 1; k < index; ++k) {
    kept->step(Probability::one());
    shifted->step(Probability::one());
  }
  shifted->step(a);
  IgtBobResult r;
  r.kept = kept->output();
  r.shifted = shifted->output();
  const Rational keep = 1 - cfg.epsilon;
  r.decision = ratio_exceeds(r.kept, r.shifted, Rational(1) / (keep * keep));
  return r;
}

ProtocolTranscript igt_from_swapp(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                                  const std::vector<Probability>& word, std::uint64_t index,
                                  const Probability& a, std::uint64_t seed) {
  if (index == 0 || index > cfg.m) throw std::out_of_range("index outside 1..m");
  ProtocolTranscript t;
  t.protocol = "igt-swapp";
  t.alice_input = join(word);
  t.bob_input = std::to_string(index) + ":" + a.to_string();
  t.message = igt_alice(factory, cfg, word, seed);
  const IgtBobResult r = igt_bob(factory, cfg, t.message, index, a, seed);
  t.bob_outputs = {r.kept.to_string(), r.shifted.to_string()};
  t.decision = r.decision;
  t.expected = word[index - 1] > a;
  return t;
}

SweepReport gt_app_sweep(const ApproxFactory& factory, const GtAppInstance& inst,
                         std::uint64_t seed) {
  SweepReport r;
  r.protocol = "gt-app";
  r.reference_name = "log2(floor(y/5)+1)";
  r.reference_bits = std::log2(static_cast<double>(inst.max_index() + 1));
  const std::uint64_t top = inst.max_index();
  for (std::uint64_t i = 0; i <= top; ++i) {
    const BitString message = gt_app_alice(factory, inst, i, seed);
    for (std::uint64_t j = 0; j <= top; ++j) {
      ProtocolTranscript t;
      t.protocol = r.protocol;
      t.alice_input = std::to_string(i);
      t.bob_input = std::to_string(j);
      t.message = message;
      const GtAppBobResult b = gt_app_bob(factory, inst, message, j, seed);
      t.decision = b.decision;
      t.expected = i > j;
      const BigInt d = b.alice_bucket - b.bob_bucket;
      const bool case_ok = i > j ? d >= 3 : (i < j ? d <= -3 : abs(d) <= 2);
      if (!case_ok) {
        r.trichotomy_holds = false;
        t.details = {{"distance", d.get_str()}};
        if (r.failures.size() < 16) r.failures.push_back(t.to_log_line());
      }
      accumulate(r, t);
    }
  }
  finish(r);
  return r;
}

SweepReport gt_tpp_sweep(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                         std::uint64_t seed) {
  SweepReport r;
  r.protocol = "gt-tpp";
  r.reference_name = "n*b";
  r.reference_bits = static_cast<double>(fam.n() * fam.b());
  const std::uint64_t N = fam.size();
  for (std::uint64_t i = 1; i <= N; ++i) {
    const BitString message = gt_tpp_alice(factory, fam, i, seed);
    for (std::uint64_t j = 1; j <= N; ++j) {
      ProtocolTranscript t;
      t.protocol = r.protocol;
      t.alice_input = std::to_string(i);
      t.bob_input = std::to_string(j);
      t.message = message;
      t.decision = gt_tpp_bob(factory, fam, message, j, seed);
      t.expected = i > j;
      accumulate(r, t);
    }
  }
  finish(r);
  return r;
}

SweepReport igt_sweep(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                      std::uint64_t seed) {
  SweepReport r;
  r.protocol = "igt-swapp";
  r.reference_name = "m*log2(c)";
  r.reference_bits = static_cast<double>(cfg.m) * std::log2(static_cast<double>(cfg.c));
  std::uint64_t words = 1;
  for (std::uint64_t k = 0; k < cfg.m; ++k) {
    if (words > (std::uint64_t{1} << 20) / cfg.c) throw std::length_error("too many IGT inputs");
    words *= cfg.c;
  }
  std::vector<Probability> word(cfg.m);
  for (std::uint64_t w = 0; w < words; ++w) {
    std::uint64_t rest = w;
    for (auto& q : word) {
      q = cfg.alphabet[rest % cfg.c];
      rest /= cfg.c;
    }
    const BitString message = igt_alice(factory, cfg, word, seed);
    for (std::uint64_t index = 1; index <= cfg.m; ++index) {
      for (const auto& a : cfg.alphabet) {
        ProtocolTranscript t;
        t.protocol = r.protocol;
        t.alice_input = join(word);
        t.bob_input = std::to_string(index) + ":" + a.to_string();
        t.message = message;
        t.decision = igt_bob(factory, cfg, message, index, a, seed).decision;
        t.expected = word[index - 1] > a;
        accumulate(r, t);
      }
    }
  }
  finish(r);
  return r;
}

}  // namespace probstream
