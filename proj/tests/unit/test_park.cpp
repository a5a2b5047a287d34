#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "plategate/park/core.hpp"
#include "workload.hpp"

using namespace plategate::park;

namespace {

ParkCore registered_core() {
  ParkCore core;
  EXPECT_EQ(core.execute(Command::registration("OD02AB1234", "alice", "+15550001111", 0)).status, Status::Registered);
  EXPECT_EQ(core.execute(Command::registration("TS09F8888", "bob", "+15550002222", 0)).status, Status::Registered);
  return core;
}

}  // namespace

// ---- fees ----

TEST(Fee, ZeroDurationIsFree) { EXPECT_EQ(compute_fee(0, RateSchedule{}), 0); }

TEST(Fee, DefaultScheduleExamples) {
  const RateSchedule s;
  EXPECT_EQ(compute_fee(10, s), 0);
  EXPECT_EQ(compute_fee(11, s), 2000);
  EXPECT_EQ(compute_fee(45, s), 2000);
  EXPECT_EQ(compute_fee(60, s), 2000);
  EXPECT_EQ(compute_fee(61, s), 3000);
  EXPECT_EQ(compute_fee(95, s), 4000);
  EXPECT_EQ(compute_fee(120, s), 4000);
  EXPECT_EQ(compute_fee(121, s), 5000);
}

TEST(Fee, OracleExamples) {
  const RateSchedule s;
  EXPECT_EQ(oracle::fee(45, s), 2000);
  EXPECT_EQ(oracle::fee(95, s), 4000);
}

TEST(Fee, MatchesMinuteOracleOnRandomSchedules) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> dur(0, 10080);
  for (int i = 0; i < 2000; ++i) {
    const RateSchedule s = workload::random_schedule(rng);
    const std::int64_t d = dur(rng);
    ASSERT_EQ(compute_fee(d, s), oracle::fee(d, s)) << "d=" << d << " grace=" << s.grace_min;
  }
}

TEST(Fee, MonotoneInDuration) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const RateSchedule s = workload::random_schedule(rng);
    Money prev = 0;
    for (std::int64_t d = 0; d <= 2000; ++d) {
      const Money f = compute_fee(d, s);
      ASSERT_GE(f, prev);
      prev = f;
    }
  }
}

TEST(Fee, DurationRoundsUpToMinutes) {
  EXPECT_EQ(duration_minutes(100, 100), 0);
  EXPECT_EQ(duration_minutes(100, 101), 1);
  EXPECT_EQ(duration_minutes(100, 160), 1);
  EXPECT_EQ(duration_minutes(100, 161), 2);
}

TEST(Fee, ScheduleValidation) {
  RateSchedule s;
  s.base_min = s.grace_min;
  EXPECT_FALSE(s.valid());
  EXPECT_THROW(s.validate(), InvalidSchedule);
  EXPECT_THROW(ParkCore{s}, InvalidSchedule);
  s = RateSchedule{};
  s.block_min = 0;
  EXPECT_FALSE(s.valid());
}

// ---- weighted edit distance and matching ----

TEST(EditDistance, Weights) {
  EXPECT_EQ(weighted_edit_halves("OD02AB1234", "OD02AB1234"), 0);
  EXPECT_EQ(weighted_edit_halves("OD02AB1Z34", "OD02AB1234"), 1);  // Z~2
  EXPECT_EQ(weighted_edit_halves("OD02AB1X34", "OD02AB1234"), 2);
  EXPECT_EQ(weighted_edit_halves("OD02AB124", "OD02AB1234"), 2);
  EXPECT_DOUBLE_EQ(weighted_edit_distance("OD02AB1Z34", "OD02AB1234"), 0.5);
}

TEST(EditDistance, MatchesExhaustiveAlignmentSearch) {
  std::mt19937_64 rng(5);
  const std::string alphabet = "O0DQI1LB8Z2AX";
  std::uniform_int_distribution<int> len(0, 5), ch(0, static_cast<int>(alphabet.size()) - 1);
  for (int i = 0; i < 3000; ++i) {
    std::string a, b;
    for (int k = len(rng); k > 0; --k) a += alphabet[ch(rng)];
    for (int k = len(rng); k > 0; --k) b += alphabet[ch(rng)];
    ASSERT_EQ(weighted_edit_halves(a, b), oracle::edit_brute(a, b)) << a << " vs " << b;
  }
}

TEST(EditDistance, MatchesFullTableOnPlateLengths) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 2000; ++i) {
    const std::string a = workload::misread(rng, workload::misread(rng, "OD02AB1234"));
    const std::string b = workload::misread(rng, "KA05MN0088");
    ASSERT_EQ(weighted_edit_halves(a, b), oracle::edit_table(a, b));
  }
}

TEST(Match, Exact) {
  const std::vector<std::string> reg = {"OD02AB1234"};
  const MatchResult m = match_plate("OD02AB1234", reg);
  EXPECT_EQ(m.outcome, MatchOutcome::Exact);
  EXPECT_EQ(m.matched_plate, "OD02AB1234");
}

TEST(Match, FuzzyHalfCost) {
  const std::vector<std::string> reg = {"OD02AB1234"};
  const MatchResult m = match_plate("OD02AB1Z34", reg);
  EXPECT_EQ(m.outcome, MatchOutcome::Fuzzy);
  EXPECT_DOUBLE_EQ(m.cost(), 0.5);
  EXPECT_EQ(m.matched_plate, "OD02AB1234");
}

// B and 8 share a group, B and 3 do not: one candidate is strictly closer.
TEST(Match, NearTwinResolvesToConfusablePlate) {
  const std::vector<std::string> reg = {"OD02AB1234", "OD02AB1284"};
  EXPECT_EQ(weighted_edit_halves("OD02AB12B4", "OD02AB1284"), 1);
  EXPECT_EQ(weighted_edit_halves("OD02AB12B4", "OD02AB1234"), 2);
  const MatchResult m = match_plate("OD02AB12B4", reg);
  EXPECT_EQ(m.outcome, MatchOutcome::Fuzzy);
  EXPECT_EQ(m.matched_plate, "OD02AB1284");
}

TEST(Match, TiedMinimaAreAmbiguous) {
  const std::vector<std::string> reg = {"OD02AB1234", "QD02AB1234"};
  const MatchResult m = match_plate("0D02AB1234", reg);  // 0~O and 0~Q
  EXPECT_EQ(m.outcome, MatchOutcome::Ambiguous);
  EXPECT_DOUBLE_EQ(m.cost(), 0.5);
  EXPECT_FALSE(m.matched_plate);
  EXPECT_EQ(m.candidates, reg);

  const std::vector<std::string> far = {"OD02AB1234", "OD02AB1284"};
  EXPECT_EQ(match_plate("OD02AB12X4", far).outcome, MatchOutcome::Ambiguous);  // both at 1.0
}

TEST(Match, BeyondOneIsNoMatch) {
  const std::vector<std::string> reg = {"OD02AB1234"};
  EXPECT_EQ(match_plate("OD02AB12XY", reg).outcome, MatchOutcome::NoMatch);
  EXPECT_EQ(match_plate("anything", std::vector<std::string>{}).outcome, MatchOutcome::NoMatch);
}

TEST(Match, ArgminEqualsBruteForceScan) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 400; ++trial) {
    const workload::Fleet fleet = workload::make_fleet(rng, 12);
    std::string reading = fleet.plates[trial % fleet.plates.size()];
    for (int k = trial % 3; k > 0; --k) reading = workload::misread(rng, reading);
    const MatchResult got = match_plate(reading, fleet.plates);
    const oracle::MatchExpectation want = oracle::match(reading, fleet.plates);
    ASSERT_EQ(static_cast<int>(got.outcome), static_cast<int>(want.kind)) << reading;
    if (want.kind == oracle::MatchExpectation::Fuzzy) {
      EXPECT_EQ(got.cost_halves, want.cost_halves);
      EXPECT_EQ(*got.matched_plate, want.plate);
    }
    if (want.kind == oracle::MatchExpectation::Ambiguous) {
      EXPECT_EQ(got.candidates, want.tied);
    }
  }
}

// ---- records ----

TEST(Records, PhoneAndUserIdShapes) {
  EXPECT_TRUE(is_e164("+15550001111"));
  EXPECT_FALSE(is_e164("15550001111"));
  EXPECT_FALSE(is_e164("+05550001111"));
  EXPECT_FALSE(is_e164("+1555"));
  EXPECT_FALSE(is_e164("+1555000111a"));
  EXPECT_TRUE(is_valid_user_id("alice.b-1_2"));
  EXPECT_FALSE(is_valid_user_id(""));
  EXPECT_FALSE(is_valid_user_id("a/b"));
}

// ---- state machine ----

TEST(Registration, Validation) {
  ParkCore core = registered_core();
  EXPECT_EQ(core.execute(Command::registration("OD02AB1234", "carol", "+15550003333", 1)).status,
            Status::DuplicatePlate);
  EXPECT_EQ(core.execute(Command::registration("XX", "carol", "+15550003333", 1)).status, Status::InvalidPlate);
  EXPECT_EQ(core.execute(Command::registration("KA01A0001", "", "+15550003333", 1)).status, Status::InvalidUserId);
  EXPECT_EQ(core.execute(Command::registration("KA01A0001", "carol", "555", 1)).status, Status::InvalidPhone);
  EXPECT_TRUE(core.has_user("alice"));
  EXPECT_FALSE(core.has_user("carol"));
}

TEST(Entry, OpensSessionAndNotifies) {
  ParkCore core = registered_core();
  const Outcome out = core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  ASSERT_EQ(out.status, Status::Opened);
  EXPECT_EQ(out.session->session_id, "S000001");
  EXPECT_EQ(out.session->state, SessionState::Active);
  ASSERT_TRUE(out.notification);
  EXPECT_EQ(out.notification->kind, NotificationKind::Entry);
  EXPECT_EQ(out.notification->created_at, 1000);
  EXPECT_EQ(out.notification->phone, "+15550001111");
  EXPECT_EQ(core.notifications("alice").size(), 1U);
  EXPECT_EQ(core.active_session("OD02AB1234")->entry_ts, 1000);
}

TEST(Entry, RedeliveryReturnsOriginalOutcome) {
  ParkCore core = registered_core();
  const Outcome first = core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  const ParkCore before = core;
  Outcome again = core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  EXPECT_TRUE(again.replayed);
  again.replayed = false;
  EXPECT_EQ(again, first);
  EXPECT_EQ(core, before);
  EXPECT_EQ(core.sessions().size(), 1U);
}

TEST(Entry, SecondEntryWhileActiveIsDuplicate) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  EXPECT_EQ(core.execute(Command::entry("OD02AB1234", 1500, "e2")).status, Status::DuplicateEntry);
  EXPECT_EQ(core.active_count(), 1U);
}

TEST(Entry, UnregisteredAndInvalidReadings) {
  ParkCore core = registered_core();
  EXPECT_EQ(core.execute(Command::entry("KA01MN0001", 1, "a")).status, Status::UnregisteredPlate);
  EXPECT_EQ(core.execute(Command::entry("??", 1, "b")).status, Status::InvalidPlate);
  EXPECT_TRUE(core.sessions().empty());
}

TEST(Entry, OutOfOrderTimestampRefused) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 1000));
  core.execute(Command::exit("OD02AB1234", 2000));
  EXPECT_EQ(core.execute(Command::entry("OD02AB1234", 1999)).status, Status::OutOfOrder);
  EXPECT_EQ(core.execute(Command::entry("OD02AB1234", 2000)).status, Status::Opened);
}

TEST(Exit, ClosesChargesAndRecordsTrip) {
  ParkCore core = registered_core();
  core.execute(Command::topup("alice", 10000, 10));
  core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  const Outcome out = core.execute(Command::exit("OD02AB1234", 1000 + 95 * 60, "x1"));
  ASSERT_EQ(out.status, Status::Closed);
  EXPECT_EQ(out.trip->duration_min, 95);
  EXPECT_EQ(out.trip->fee, compute_fee(95, core.schedule()));
  EXPECT_EQ(out.trip->fee, 4000);
  ASSERT_TRUE(out.transaction);
  EXPECT_EQ(out.transaction->kind, TransactionKind::Charge);
  EXPECT_EQ(out.transaction->ref, "S000001");
  EXPECT_EQ(out.notification->fee, 4000);
  EXPECT_EQ(out.notification->duration_min, 95);
  EXPECT_EQ(core.wallet("alice")->balance(), 6000);
  EXPECT_EQ(core.active_count(), 0U);
  EXPECT_EQ(core.sessions(SessionState::Closed).size(), 1U);
}

TEST(Exit, RedeliveryDoesNotChargeTwice) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 1000, "e1"));
  const Outcome first = core.execute(Command::exit("OD02AB1234", 9000, "x1"));
  const Outcome again = core.execute(Command::exit("OD02AB1234", 9000, "x1"));
  EXPECT_TRUE(again.replayed);
  EXPECT_EQ(again.trip, first.trip);
  EXPECT_EQ(core.wallet("alice")->transactions.size(), 1U);
  EXPECT_EQ(core.trips("alice").size(), 1U);
}

TEST(Exit, NeverEnteredIsExitWithoutEntry) {
  ParkCore core = registered_core();
  EXPECT_EQ(core.execute(Command::exit("OD02AB1234", 1000)).status, Status::ExitWithoutEntry);
}

TEST(Exit, GraceStayHasNoCharge) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 0));
  const Outcome out = core.execute(Command::exit("OD02AB1234", 300));
  EXPECT_EQ(out.trip->fee, 0);
  EXPECT_FALSE(out.transaction);
  EXPECT_TRUE(core.wallet("alice")->transactions.empty());
}

TEST(Exit, InsufficientFundsGoesDelinquent) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 0));
  core.execute(Command::exit("OD02AB1234", 3600));
  EXPECT_EQ(core.wallet("alice")->balance(), -2000);
  EXPECT_TRUE(core.wallet("alice")->delinquent());
}

TEST(Exit, FuzzyReadingClosesTheMatchedSession) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 0));
  const Outcome out = core.execute(Command::exit("0D02AB1234", 600));
  EXPECT_EQ(out.status, Status::Closed);
  EXPECT_EQ(out.match.outcome, MatchOutcome::Fuzzy);
  EXPECT_EQ(out.session->plate, "OD02AB1234");
}

TEST(Wallet, Topups) {
  ParkCore core = registered_core();
  EXPECT_EQ(core.wallet("alice")->balance(), 0);
  EXPECT_EQ(core.execute(Command::topup("alice", 5000, 1)).status, Status::ToppedUp);
  EXPECT_EQ(core.wallet("alice")->balance(), 5000);
  EXPECT_EQ(core.execute(Command::topup("alice", 0, 2)).status, Status::NonPositiveAmount);
  EXPECT_EQ(core.execute(Command::topup("alice", -5, 2)).status, Status::NonPositiveAmount);
  EXPECT_EQ(core.execute(Command::topup("nobody", 5, 2)).status, Status::UnknownUser);
  EXPECT_EQ(core.wallet("nobody"), nullptr);
}

TEST(Wallet, TopupThenChargeFold) {
  ParkCore core(RateSchedule{0, 1, 40, 1, 0});
  core.execute(Command::registration("OD02AB1234", "alice", "+15550001111", 0));
  core.execute(Command::topup("alice", 100, 1));
  core.execute(Command::entry("OD02AB1234", 2));
  core.execute(Command::exit("OD02AB1234", 50));
  const WalletAccount& w = *core.wallet("alice");
  ASSERT_EQ(w.transactions.size(), 2U);
  EXPECT_LT(w.transactions[0].seq, w.transactions[1].seq);
  EXPECT_EQ(w.balance(), 60);
}

TEST(Trips, EmptyForNewUser) {
  const ParkCore core = registered_core();
  EXPECT_TRUE(core.trips("alice").empty());
}

TEST(Trips, NewestFirstAndOnlyClosed) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 0));
  core.execute(Command::exit("OD02AB1234", 600));
  core.execute(Command::entry("OD02AB1234", 1000));
  core.execute(Command::exit("OD02AB1234", 5000));
  core.execute(Command::entry("OD02AB1234", 6000));
  const auto trips = core.trips("alice");
  ASSERT_EQ(trips.size(), 2U);
  EXPECT_EQ(trips[0].exit_ts, 5000);
  EXPECT_EQ(trips[1].exit_ts, 600);
  EXPECT_TRUE(core.trips("bob").empty());
}

TEST(Notifications, SinceCursor) {
  ParkCore core = registered_core();
  core.execute(Command::entry("OD02AB1234", 0));
  core.execute(Command::entry("TS09F8888", 1));
  core.execute(Command::exit("OD02AB1234", 600));
  const auto all = core.notifications("alice", 0);
  ASSERT_EQ(all.size(), 2U);
  EXPECT_EQ(all[0].kind, NotificationKind::Entry);
  EXPECT_EQ(all[1].kind, NotificationKind::Exit);
  EXPECT_LT(all[0].seq, all[1].seq);
  const auto tail = core.notifications("alice", all[0].seq);
  ASSERT_EQ(tail.size(), 1U);
  EXPECT_EQ(tail[0].seq, all[1].seq);
  EXPECT_TRUE(core.notifications("alice", all[1].seq).empty());
}

TEST(Review, AmbiguousEntryQueuesThenApproveOpens) {
  ParkCore core;
  core.execute(Command::registration("OD02AB1234", "alice", "+15550001111", 0));
  core.execute(Command::registration("QD02AB1234", "bob", "+15550002222", 0));
  const Outcome amb = core.execute(Command::entry("0D02AB1234", 1000, "e1", 0.6));
  ASSERT_EQ(amb.status, Status::ManualReview);
  ASSERT_EQ(core.reviews(ReviewStatus::Pending).size(), 1U);
  const std::string id = amb.review->review_id;
  EXPECT_TRUE(core.sessions().empty());

  EXPECT_EQ(core.execute(Command::approve(id, "KA01A0001", 1200)).status, Status::NotACandidate);
  const Outcome ok = core.execute(Command::approve(id, "QD02AB1234", 1200));
  ASSERT_EQ(ok.status, Status::Approved);
  EXPECT_EQ(ok.session->plate, "QD02AB1234");
  EXPECT_EQ(ok.session->entry_ts, 1000);
  EXPECT_EQ(core.active_count(), 1U);
  EXPECT_TRUE(core.reviews(ReviewStatus::Pending).empty());
  EXPECT_EQ(core.execute(Command::approve(id, "QD02AB1234", 1300)).status, Status::ReviewResolved);
  EXPECT_EQ(core.execute(Command::reject("R999999", 1300)).status, Status::UnknownReview);
}

TEST(Review, RejectLeavesNoSession) {
  ParkCore core;
  core.execute(Command::registration("OD02AB1234", "alice", "+15550001111", 0));
  core.execute(Command::registration("QD02AB1234", "bob", "+15550002222", 0));
  const Outcome amb = core.execute(Command::entry("0D02AB1234", 1000));
  const Outcome r = core.execute(Command::reject(amb.review->review_id, 1100));
  EXPECT_EQ(r.status, Status::Rejected);
  EXPECT_EQ(core.reviews(ReviewStatus::Rejected).size(), 1U);
  EXPECT_TRUE(core.sessions().empty());
}

TEST(Review, ApproveCanBeRefusedByStateGuard) {
  ParkCore core;
  core.execute(Command::registration("OD02AB1234", "alice", "+15550001111", 0));
  core.execute(Command::registration("QD02AB1234", "bob", "+15550002222", 0));
  const Outcome amb = core.execute(Command::entry("0D02AB1234", 1000));
  core.execute(Command::entry("OD02AB1234", 1000));
  EXPECT_EQ(core.execute(Command::approve(amb.review->review_id, "OD02AB1234", 1100)).status,
            Status::DuplicateEntry);
  core.execute(Command::exit("OD02AB1234", 1001));
  // The review still carries ts 1000, now older than the plate's last event.
  EXPECT_EQ(core.execute(Command::approve(amb.review->review_id, "OD02AB1234", 1100)).status, Status::OutOfOrder);
  EXPECT_EQ(core.reviews(ReviewStatus::Pending).size(), 1U);
}

TEST(Core, PlanIsSideEffectFree) {
  ParkCore core = registered_core();
  const ParkCore before = core;
  const Command cmd = Command::entry("OD02AB1234", 5, "k");
  const Outcome planned = core.plan(cmd);
  EXPECT_EQ(core, before);
  core.commit(cmd, planned);
  EXPECT_EQ(core.active_count(), 1U);
}

// ---- properties over random streams ----

namespace {

struct Tally {
  Money topups = 0;
  Money charges = 0;
};

}  // namespace

TEST(Properties, LedgerIdempotencyAndSafety) {
  std::mt19937_64 rng(2024);
  std::size_t replays = 0, trips = 0, reviews = 0, fuzzy = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto base = workload::random_stream(rng, 8, 80);
    const auto noisy = workload::with_duplicates(rng, base, 0.2);

    ParkCore dedup, dup;
    for (const Command& c : base) dedup.execute(c);
    std::map<std::string, Tally> per_user;
    for (const Command& c : noisy) {
      const Outcome out = dup.plan(c);
      dup.commit(c, out);
      replays += out.replayed ? 1 : 0;
      fuzzy += out.ok() && out.match.outcome == MatchOutcome::Fuzzy ? 1 : 0;
      // Safety after every delivery.
      std::map<std::string, int> active;
      for (const auto& s : dup.sessions(SessionState::Active)) ASSERT_EQ(++active[s.plate], 1);
      if (out.ok() && !out.replayed && out.transaction) {
        const bool topup = out.transaction->kind == TransactionKind::Topup;
        auto& u = per_user[topup ? c.user_id : out.trip->user_id];
        (topup ? u.topups : u.charges) += out.transaction->amount;
      }
    }
    ASSERT_EQ(dup, dedup) << "trial " << trial;
    trips += dup.all_trips().size();
    reviews += dup.reviews().size();
    for (const auto& [user, t] : per_user) {
      ASSERT_EQ(dup.wallet(user)->balance(), t.topups - t.charges);
      Money fees = 0;
      for (const auto& trip : dup.trips(user)) fees += trip.fee;
      ASSERT_EQ(fees, t.charges);
    }
  }
  // The generator must actually reach the interesting paths.
  EXPECT_GT(replays, 500U);
  EXPECT_GT(trips, 1000U);
  EXPECT_GT(reviews, 20U);
  EXPECT_GT(fuzzy, 100U);
}

TEST(Properties, ClosedSessionsNeverReopen) {
  std::mt19937_64 rng(77);
  const auto stream = workload::random_stream(rng, 6, 300);
  ParkCore core;
  std::set<std::string> closed;
  for (const Command& c : stream) {
    core.execute(c);
    for (const auto& s : core.sessions()) {
      if (closed.contains(s.session_id)) {
        ASSERT_EQ(s.state, SessionState::Closed);
      }
      if (s.state == SessionState::Closed) {
        closed.insert(s.session_id);
        ASSERT_TRUE(s.exit_ts);
        ASSERT_GE(*s.exit_ts, s.entry_ts);
      } else {
        ASSERT_FALSE(s.exit_ts);
      }
    }
  }
}
