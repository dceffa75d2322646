#include "connections/game.hpp"

#include <gtest/gtest.h>

#include "connections/transcript.hpp"
#include "criteria.hpp"
#include "test_support.hpp"

namespace connections {
namespace {

const Puzzle& p1() { return testsupport::fixture_puzzles().front(); }

Guess guess(std::initializer_list<const char*> ws) {
  std::vector<Word> v;
  for (auto w : ws) v.emplace_back(w);
  return Guess(v);
}

GameState iterative(int budget = 4, WordOrder order = WordOrder::grouped()) {
  return GameState::new_game(p1(), {Variant::Iterative, budget, order});
}

TEST(GameTest, CorrectGuessSolvesCategory) {
  auto g = iterative();
  auto fb = g.submit_guess(guess({"trout", "bass", "salmon", "flounder"}));
  EXPECT_EQ(fb.kind, FeedbackKind::Correct);
  ASSERT_TRUE(fb.category.has_value());
  EXPECT_EQ(fb.category->color, Color::Yellow);
  EXPECT_EQ(g.remaining().size(), 12u);
  EXPECT_EQ(g.incorrect_count(), 0);
  EXPECT_FALSE(g.is_remaining(Word("BASS")));
}

TEST(GameTest, ThreeOfFourIsNearlyCorrectAndCostsBudget) {
  auto g = iterative();
  auto fb = g.submit_guess(guess({"bass", "salmon", "trout", "opal"}));
  EXPECT_EQ(fb.kind, FeedbackKind::NearlyCorrect);
  EXPECT_TRUE(fb.costs_budget());
  EXPECT_EQ(g.incorrect_count(), 1);
  EXPECT_EQ(g.guesses_left(), 3);
}

TEST(GameTest, TwoTwoSplitIsIncorrect) {
  auto g = iterative();
  EXPECT_EQ(g.submit_guess(guess({"bass", "salmon", "mars", "venus"})).kind, FeedbackKind::Incorrect);
}

TEST(GameTest, InvalidGuessesConsumeNothing) {
  auto g = iterative();
  EXPECT_EQ(g.submit_guess(guess({"bass", "salmon", "trout"})).reason, InvalidReason::NotFourWords);
  EXPECT_EQ(g.submit_guess(guess({"bass", "bass", "salmon", "trout"})).reason, InvalidReason::NotFourWords);
  EXPECT_EQ(g.submit_guess(guess({"bass", "salmon", "trout", "cod"})).reason, InvalidReason::UnknownWord);
  g.submit_guess(guess({"bass", "salmon", "mars", "venus"}));
  EXPECT_EQ(g.submit_guess(guess({"venus", "mars", "salmon", "bass"})).reason, InvalidReason::DuplicateGuess);
  g.submit_guess(guess({"ant", "drill", "island", "opal"}));
  EXPECT_EQ(g.submit_guess(guess({"opal", "bass", "salmon", "trout"})).reason,
            InvalidReason::WordAlreadySolved);
  EXPECT_EQ(g.incorrect_count(), 1);
  EXPECT_EQ(g.remaining().size(), 12u);
  EXPECT_EQ(g.history().size(), 7u);
}

TEST(GameTest, LosesWhenBudgetExhausted) {
  auto g = iterative(2);
  g.submit_guess(guess({"bass", "salmon", "mars", "venus"}));
  EXPECT_FALSE(g.finished());
  g.submit_guess(guess({"bass", "mars", "ant", "ladle"}));
  EXPECT_EQ(g.status(), GameStatus::Lost);
  EXPECT_THROW(g.submit_guess(guess({"bass", "salmon", "trout", "flounder"})), GameError);
}

TEST(GameTest, WinsAfterFourCategories) {
  auto g = iterative();
  for (const auto& cat : p1().categories()) {
    EXPECT_FALSE(g.finished());
    g.submit_guess(Guess({cat.words.begin(), cat.words.end()}));
  }
  EXPECT_EQ(g.status(), GameStatus::Won);
  EXPECT_TRUE(g.remaining().empty());
}

TEST(GameTest, ForcedFinalGuess) {
  auto g = iterative();
  EXPECT_THROW(g.forced_final_guess(), GameError);
  for (int i = 0; i < 3; ++i) {
    const auto& cat = p1().categories()[i];
    g.submit_guess(Guess({cat.words.begin(), cat.words.end()}));
  }
  auto last = g.forced_final_guess();
  EXPECT_TRUE(last.same_as(Guess({p1().categories()[3].words.begin(), p1().categories()[3].words.end()})));
}

TEST(GameTest, WrongVariantThrows) {
  auto g = iterative();
  EXPECT_THROW(g.submit_partition({}), GameError);
  auto a = GameState::new_game(p1(), {Variant::AllInOne, 4, WordOrder::grouped()});
  EXPECT_THROW(a.submit_guess(guess({"bass", "salmon", "trout", "flounder"})), GameError);
}

PartitionGuess answer_partition(const Puzzle& p) {
  PartitionGuess pg;
  for (const auto& c : p.categories()) pg.groups.emplace_back(std::vector<Word>(c.words.begin(), c.words.end()));
  return pg;
}

TEST(AllInOneTest, OnlyAllOrNothingFeedback) {
  auto g = GameState::new_game(p1(), {Variant::AllInOne, 3, WordOrder::shuffled(1)});
  auto pg = answer_partition(p1());
  std::swap(pg.groups[0].words[0], pg.groups[1].words[0]);
  auto fb = g.submit_partition(pg);
  EXPECT_EQ(fb.kind, FeedbackKind::NotAllCorrect);
  EXPECT_FALSE(fb.category.has_value());
  EXPECT_EQ(g.incorrect_count(), 1);
  EXPECT_EQ(g.submit_partition(pg).reason, InvalidReason::DuplicateGuess);
  EXPECT_EQ(g.submit_partition(answer_partition(p1())).kind, FeedbackKind::AllCorrect);
  EXPECT_EQ(g.status(), GameStatus::Won);
  EXPECT_EQ(g.solved().size(), 4u);
}

TEST(AllInOneTest, MalformedPartitions) {
  auto g = GameState::new_game(p1(), {Variant::AllInOne, 3, WordOrder::grouped()});
  auto pg = answer_partition(p1());
  pg.groups.pop_back();
  EXPECT_EQ(g.submit_partition(pg).reason, InvalidReason::MalformedPartition);
  pg = answer_partition(p1());
  pg.groups[0].words[0] = pg.groups[1].words[0];
  EXPECT_EQ(g.submit_partition(pg).reason, InvalidReason::MalformedPartition);
  pg = answer_partition(p1());
  pg.groups[2].words[3] = Word("PLUTO");
  EXPECT_EQ(g.submit_partition(pg).reason, InvalidReason::MalformedPartition);
  EXPECT_EQ(g.incorrect_count(), 0);
}

TEST(WordOrderTest, ShuffleIsSeededPermutation) {
  auto a = GameState::new_game(p1(), {Variant::Iterative, 4, WordOrder::shuffled(42)});
  auto b = GameState::new_game(p1(), {Variant::Iterative, 4, WordOrder::shuffled(42)});
  auto c = GameState::new_game(p1(), {Variant::Iterative, 4, WordOrder::shuffled(43)});
  EXPECT_EQ(a.presented_order(), b.presented_order());
  EXPECT_NE(a.presented_order(), c.presented_order());
  auto sorted_a = a.presented_order();
  auto grouped = p1().grouped_words();
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(grouped.begin(), grouped.end());
  EXPECT_EQ(sorted_a, grouped);
}

TEST(WordOrderTest, GroupedKeepsCategoryOrder) {
  auto g = iterative();
  EXPECT_EQ(g.presented_order(), p1().grouped_words());
}

TEST(WordOrderTest, ShuffleIsDeterministic) {
  std::vector<Word> ws;
  for (int i = 0; i < 6; ++i) ws.emplace_back(std::string(1, static_cast<char>('A' + i)));
  auto a = ws;
  seeded_shuffle(a, 0);
  auto b = ws;
  seeded_shuffle(b, 0);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, ws);
}

TEST(GameTest, RemainingKeepsPresentedOrder) {
  auto g = iterative(4, WordOrder::shuffled(9));
  g.submit_guess(guess({"ladle", "whisk", "spatula", "tongs"}));
  std::vector<Word> expect;
  for (const auto& w : g.presented_order())
    if (!p1().category(Color::Green).contains(w)) expect.push_back(w);
  EXPECT_EQ(g.remaining(), expect);
}

TEST(GameTest, ReplayReproducesState) {
  auto g = iterative(4, WordOrder::shuffled(3));
  g.submit_guess(guess({"bass", "salmon", "trout", "opal"}));
  g.submit_guess(guess({"bass", "salmon", "trout"}));
  g.submit_guess(guess({"bass", "salmon", "trout", "flounder"}));
  auto r = GameState::replay(p1(), g.config(), g.history());
  EXPECT_EQ(r, g);
}

TEST(GameTest, ConfigValidation) {
  GameConfig c;
  c.max_incorrect = 0;
  EXPECT_THROW(c.validate(), GameError);
  EXPECT_EQ(parse_variant("challenge"), Variant::AllInOne);
  EXPECT_EQ(to_string(Variant::Iterative), "iterative");
}

TEST(GameOracleTest, TenThousandRandomGuessesAgreeWithBruteForce) {
  auto s = testsupport::game_oracle_trials(10000, 20240101);
  EXPECT_EQ(s.agreed, s.trials) << s.first_mismatch;
}

}  // namespace
}  // namespace connections
