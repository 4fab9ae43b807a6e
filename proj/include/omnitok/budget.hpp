// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace omnitok::budget {

struct BudgetConfig {
  std::int64_t reasoning_budget = 13000;
  std::int64_t grace = 1024;
  std::int64_t max_sequence = 16384;

  friend bool operator==(const BudgetConfig&, const BudgetConfig&) = default;
};

void validate(const BudgetConfig& config);

enum class Phase { BeforeThink, Reasoning, Grace, Answer, Closed };
enum class Event { ThinkOpen, ThinkClose, Token, End };

enum class Action {
  Pass,
  // Emit a think-close in place of the offered token.
  InjectThinkClose,
  // Drop the offered event: the model's own think-close after a forced one.
  Suppress,
  Stop,
};

std::string_view to_string(Phase phase) noexcept;
std::string_view to_string(Event event) noexcept;
std::string_view to_string(Action action) noexcept;

struct StreamState {
  Phase phase = Phase::BeforeThink;
  std::int64_t reasoning_tokens = 0;
  std::int64_t total_tokens = 0;
  std::int64_t forced_closures = 0;
  std::int64_t grace_used = 0;
  bool stopped_at_cap = false;
  bool awaiting_natural_close = false;
};

struct StreamStats {
  std::int64_t reasoning_tokens = 0;
  std::int64_t total_tokens = 0;
  std::int64_t forced_closures = 0;
  bool stopped_at_cap = false;

  friend bool operator==(const StreamStats&, const StreamStats&) = default;
};

/// Reasoning-budget enforcement for one generated stream.
///
/// Every emitted event (think-open, think-close, token, injected close)
/// occupies one position of max_sequence; END does not. Tokens between
/// think-open and think-close count as reasoning. Once reasoning_budget is
/// reached the stream is in grace: a natural close within `grace` further
/// tokens passes, otherwise the next token is replaced by an injected
/// close. Any event that would push the total past max_sequence stops the
/// stream. One think block per stream.
class BudgetController {
public:
  explicit BudgetController(BudgetConfig config = {});

  Action on_token(Event event);

  const StreamState& state() const noexcept { return state_; }
  const BudgetConfig& config() const noexcept { return config_; }

  /// Throws InvalidState until END has been seen or the stream stopped.
  StreamStats finalize() const;

private:
  bool admit();

  BudgetConfig config_;
  StreamState state_;
};

/// One event per line: OPEN, CLOSE, TOK, END. Blank lines and lines
/// starting with '#' are skipped. Throws Parse with the line number.
std::vector<Event> parse_trace(std::istream& in);

struct ReplayResult {
  std::vector<Action> actions;
  StreamStats stats;
  std::int64_t injected = 0;
  std::int64_t suppressed = 0;
};

/// Feeds events until END or Stop; a trace without END is ended implicitly.
ReplayResult replay(const std::vector<Event>& events, const BudgetConfig& config = {});

}  // namespace omnitok::budget
