#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "support/synthetic.h"
#include "tonality/error.h"
#include "tonality/perceptron.h"

using namespace tonality;
using doctest::Approx;

namespace {

struct RandomCase {
  PerceptronModel model;
  TokenSet tokens;
  double target;
};

RandomCase random_case(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 8;
  std::vector<std::string> vocab;
  std::vector<double> wp, wn;
  std::vector<std::string> present;
  for (std::size_t i = 0; i < n; ++i) {
    vocab.push_back("word" + std::to_string(i));
    wp.push_back(2.0 * testing::unit(rng));
    wn.push_back(2.0 * testing::unit(rng));
    if (rng() % 2) present.push_back(vocab.back());
  }
  present.push_back("unknown");
  ModelParams p;
  p.alpha = 0.55 + 0.3 * testing::unit(rng);
  p.lambda = 0.5 + 1.5 * testing::unit(rng);
  p.gamma = 0.3 + 0.7 * testing::unit(rng);
  return {PerceptronModel(vocab, wp, wn, p), tokenize(testing::join_words(present)),
          -1.0 + 2.0 * testing::unit(rng)};
}

double loss_at(const PerceptronModel& m, const TokenSet& t, double target) {
  const double e = forward(m, t).delta - target;
  return 0.5 * e * e;
}

PerceptronModel with_weight(const PerceptronModel& m, bool positive, std::size_t i, double value) {
  std::vector<double> wp(m.w_pos().begin(), m.w_pos().end()), wn(m.w_neg().begin(), m.w_neg().end());
  (positive ? wp : wn)[i] = value;
  return PerceptronModel(m.vocab(), wp, wn, m.params());
}

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("model construction validates its invariants") {
  ModelParams p;
  CHECK_THROWS_AS(PerceptronModel({"aa"}, {1.0, 2.0}, {0.0}, p), ArgumentError);
  CHECK_THROWS_AS(PerceptronModel({"aa", "aa"}, {1, 1}, {0, 0}, p), ArgumentError);
  CHECK_THROWS_AS(PerceptronModel({"aa"}, {-0.1}, {0}, p), ArgumentError);
  CHECK_THROWS_AS(PerceptronModel({"aa"}, {NAN}, {0}, p), ArgumentError);
}

TEST_CASE("init_from_lexicon") {
  SUBCASE("empty lexicon") {
    auto model = init_from_lexicon(Lexicon{}, ModelParams{});
    CHECK(model.size() == 0);
    auto trace = forward(model, tokenize("anything at all"));
    CHECK(trace.net_pos == 0.0);
    CHECK(trace.net_neg == 0.0);
  }
  SUBCASE("two words") {
    Lexicon lex;
    lex.positive = {{"good", 0.9}};
    lex.negative = {{"bad", 0.9}};
    auto model = init_from_lexicon(lex, ModelParams{});
    CHECK(model.vocab() == std::vector<std::string>{"bad", "good"});
    CHECK(std::vector<double>(model.w_pos().begin(), model.w_pos().end()) == std::vector<double>{0, 1});
    CHECK(std::vector<double>(model.w_neg().begin(), model.w_neg().end()) == std::vector<double>{1, 0});
  }
}

TEST_CASE("forward worked examples") {
  const auto model = init_from_lexicon(testing::planted_lexicon(20), ModelParams{});
  auto none = forward(model, tokenize("plain text"));
  CHECK(none.out_pos == 0.5);
  CHECK(none.out_neg == 0.5);
  CHECK(none.delta == 0.0);
  CHECK(none.label == Label::kNeutral);

  auto one = forward(model, tokenize("good03"));
  CHECK(one.net_pos == 1.0);
  CHECK(one.out_pos == Approx(0.6).epsilon(1e-15));

  std::vector<std::string> ten;
  for (int i = 0; i < 10; ++i) ten.push_back("good0" + std::to_string(i));
  auto t = forward(model, tokenize(testing::join_words(ten)));
  CHECK(t.delta == Approx(0.48295).epsilon(1e-4));
  CHECK(t.label == Label::kPositive);
}

TEST_CASE("forward agrees with the Bayes scorer") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    Lexicon lex;
    std::vector<std::string> words;
    for (int w = 0; w < 30; ++w) {
      std::string word = "ww" + std::to_string(w);
      const auto r = rng() % 4;
      if (r == 0) lex.positive.emplace(word, 0.7);
      if (r == 1) lex.negative.emplace(word, 0.7);
      if (r == 2) lex.positive.emplace(word, 0.7), lex.negative.emplace(word, 0.8);
      if (rng() % 3 == 0) words.push_back(word);
    }
    ModelParams p;
    p.lambda = 0.5 + testing::unit(rng);
    p.gamma = 0.2 + 0.8 * testing::unit(rng);
    const TokenSet doc = tokenize(testing::join_words(words));
    const auto trace = forward(init_from_lexicon(lex, p), doc);
    const auto score = score_document(doc, lex, p);
    CHECK(trace.out_pos == score.out_pos);
    CHECK(trace.out_neg == score.out_neg);
    CHECK(trace.delta == score.delta);
    CHECK(trace.label == score.label);
    CHECK(trace.expressive == score.expressive);
  }
}

TEST_CASE("gradient") {
  SUBCASE("inactive inputs get zero gradient") {
    auto model = init_from_lexicon(testing::planted_lexicon(3), ModelParams{});
    auto g = gradient(model, tokenize("good01"), 1.0);
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (model.vocab()[i] != "good01") {
        CHECK(g.d_pos[i] == 0.0);
        CHECK(g.d_neg[i] == 0.0);
      }
    }
  }
  SUBCASE("closed-form slope at NET+ = 1") {
    auto model = init_from_lexicon(testing::planted_lexicon(1), ModelParams{});
    // target = delta + 1 makes dL/dw equal -d(delta)/dw.
    const auto trace = forward(model, tokenize("good00"));
    auto g = gradient(model, tokenize("good00"), trace.delta + 1.0);
    const std::size_t i = 1;  // vocab [bad00, good00]
    CHECK(model.vocab()[i] == "good00");
    CHECK(-g.d_pos[i] == Approx(std::log(1.5) * 0.6 * 0.4).epsilon(1e-12));
    CHECK(-g.d_pos[i] == Approx(0.097312).epsilon(1e-6));
  }
  SUBCASE("matches central finite differences") {
    std::mt19937_64 rng(23);
    const double h = 1e-5;
    for (int c = 0; c < 150; ++c) {
      auto [model, tokens, target] = random_case(rng);
      auto g = gradient(model, tokens, target);
      CHECK(g.loss == Approx(loss_at(model, tokens, target)).epsilon(1e-15));
      for (std::size_t i = 0; i < model.size(); ++i) {
        for (bool positive : {true, false}) {
          const double w = (positive ? model.w_pos() : model.w_neg())[i];
          const double fd = (loss_at(with_weight(model, positive, i, w + h), tokens, target) -
                             loss_at(with_weight(model, positive, i, std::max(0.0, w - h)), tokens, target)) /
                            (w + h - std::max(0.0, w - h));
          const double analytic = positive ? g.d_pos[i] : g.d_neg[i];
          CHECK(relative_error(analytic, fd) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("forward is invariant under vocabulary permutation") {
  std::mt19937_64 rng(29);
  for (int c = 0; c < 100; ++c) {
    auto [model, tokens, target] = random_case(rng);
    std::vector<std::size_t> perm(model.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    std::vector<std::string> vocab;
    std::vector<double> wp, wn;
    for (std::size_t i : perm) {
      vocab.push_back(model.vocab()[i]);
      wp.push_back(model.w_pos()[i]);
      wn.push_back(model.w_neg()[i]);
    }
    const auto a = forward(model, tokens);
    const auto b = forward(PerceptronModel(vocab, wp, wn, model.params()), tokens);
    CHECK(std::abs(a.delta - b.delta) < 1e-12);
    CHECK(std::abs(a.out_pos - b.out_pos) < 1e-12);
    CHECK(std::abs(a.out_neg - b.out_neg) < 1e-12);
  }
}

TEST_CASE("train") {
  const auto base = init_from_lexicon(testing::planted_lexicon(5), ModelParams{});
  const std::vector<TrainingExample> data{{tokenize("good00 good01 bad00"), 0.4}};

  SUBCASE("zero learning rate leaves the model unchanged") {
    auto result = train(base, data, {5, 0.0, std::nullopt});
    CHECK(result.model == base);
    CHECK(result.epoch_losses.size() == 5);
  }
  SUBCASE("zero epochs") {
    auto result = train(base, data, {0, 0.5, std::nullopt});
    CHECK(result.model == base);
    CHECK(result.epoch_losses.empty());
  }
  SUBCASE("a single reachable target converges") {
    auto result = train(base, data, {2000, 0.5, std::nullopt});
    CHECK(result.epoch_losses.back() < 1e-3);
    CHECK(loss_at(result.model, data[0].tokens, 0.4) < 1e-3);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(train(base, {}, {}), ArgumentError);
    CHECK_THROWS_AS(train(base, data, {1, -0.1, std::nullopt}), ArgumentError);
  }
  SUBCASE("weights stay non-negative and training is deterministic") {
    std::mt19937_64 rng(31);
    std::vector<TrainingExample> noisy;
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> words;
      for (int w = 0; w < 5; ++w) {
        if (rng() % 2) words.push_back("good0" + std::to_string(w));
        if (rng() % 2) words.push_back("bad0" + std::to_string(w));
      }
      noisy.push_back({tokenize(testing::join_words(words)), static_cast<double>(static_cast<int>(rng() % 3) - 1)});
    }
    auto a = train(base, noisy, {30, 2.0, 99});
    auto b = train(base, noisy, {30, 2.0, 99});
    CHECK(a.model == b.model);
    CHECK(a.epoch_losses == b.epoch_losses);
    for (double w : a.model.w_pos()) CHECK(w >= 0.0);
    for (double w : a.model.w_neg()) CHECK(w >= 0.0);
    auto c = train(base, noisy, {30, 2.0, 100});
    CHECK_FALSE(c.model == a.model);
  }
}

TEST_CASE("loss is non-increasing on separable data") {
  testing::PlantedGenerator gen(41);
  auto corpus = gen.corpus(100, "t");
  auto lex = induce_lexicon(testing::documents_with(corpus, Label::kPositive),
                            testing::documents_with(corpus, Label::kNegative), ModelParams{});
  std::vector<TrainingExample> data;
  for (const auto& d : corpus) data.push_back({d.doc.tokens(), label_target(d.gold)});
  auto result = train(init_from_lexicon(lex, lex.params), data, {20, 0.05, std::nullopt});
  for (std::size_t e = 1; e < result.epoch_losses.size(); ++e) {
    CHECK(result.epoch_losses[e] <= result.epoch_losses[e - 1]);
  }
  CHECK(result.epoch_losses.back() < result.epoch_losses.front());
}

TEST_CASE("TONALNET round trip") {
  std::mt19937_64 rng(37);
  auto [model, tokens, target] = random_case(rng);
  const std::string bytes = save_model(model);
  std::istringstream in(bytes);
  const auto back = load_model(in);
  CHECK(back == model);
  CHECK(save_model(back) == bytes);

  const PerceptronModel small({"bad", "good"}, {0.0, 1.5}, {1.0, 0.0}, ModelParams{});
  CHECK(save_model(small) ==
        "TONALNET 1\nW\tbad\t0\t1\nW\tgood\t1.5\t0\nPARAMS\nalpha=0.6\nlambda=1\nbeta=0.25\n"
        "gamma=0.75\ntau=0.8\nexclusion_band=0.1\nweight_floor=0.6\n");

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    return load_model(s);
  };
  CHECK_THROWS_AS(bad("TONALNET 2\nPARAMS\n"), FormatError);
  CHECK_THROWS_AS(bad("TONALNET 1\nW\taa\t-1\t0\n"), FormatError);
  CHECK_THROWS_AS(bad("TONALNET 1\nW\taa\t1\t0\nW\taa\t1\t0\n"), FormatError);
  CHECK_THROWS_AS(bad("TONALNET 1\nW\taa\t1\t0\n"), FormatError);
}
