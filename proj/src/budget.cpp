// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/budget.hpp"

#include <istream>
#include <string>

#include "omnitok/error.hpp"

namespace omnitok::budget {

void validate(const BudgetConfig& config) {
  require(config.reasoning_budget > 0 && config.grace > 0 && config.max_sequence > 0,
          ErrorCode::InvalidInput, "budget config values must be positive");
  require(config.reasoning_budget + config.grace <= config.max_sequence, ErrorCode::InvalidInput,
          "reasoning budget plus grace must not exceed max sequence length");
}

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::BeforeThink: return "before_think";
    case Phase::Reasoning: return "reasoning";
    case Phase::Grace: return "grace";
    case Phase::Answer: return "answer";
    case Phase::Closed: return "closed";
  }
  return "unknown";
}

std::string_view to_string(Event event) noexcept {
  switch (event) {
    case Event::ThinkOpen: return "OPEN";
    case Event::ThinkClose: return "CLOSE";
    case Event::Token: return "TOK";
    case Event::End: return "END";
  }
  return "unknown";
}

std::string_view to_string(Action action) noexcept {
  switch (action) {
    case Action::Pass: return "pass";
    case Action::InjectThinkClose: return "inject_think_close";
    case Action::Suppress: return "suppress";
    case Action::Stop: return "stop";
  }
  return "unknown";
}

BudgetController::BudgetController(BudgetConfig config) : config_(config) { validate(config_); }

bool BudgetController::admit() {
  if (state_.total_tokens + 1 > config_.max_sequence) {
    state_.phase = Phase::Closed;
    state_.stopped_at_cap = true;
    return false;
  }
  ++state_.total_tokens;
  return true;
}

Action BudgetController::on_token(Event event) {
  if (state_.phase == Phase::Closed) {
    require(state_.stopped_at_cap, ErrorCode::MalformedStream, "event after END");
    return Action::Stop;
  }

  switch (event) {
    case Event::End:
      state_.phase = Phase::Closed;
      return Action::Pass;

    case Event::ThinkOpen:
      require(state_.phase == Phase::BeforeThink, ErrorCode::MalformedStream,
              "think_open outside the preamble (only one think block is allowed)");
      if (!admit()) return Action::Stop;
      state_.phase = Phase::Reasoning;
      return Action::Pass;

    case Event::ThinkClose:
      if (state_.phase == Phase::Reasoning || state_.phase == Phase::Grace) {
        if (!admit()) return Action::Stop;
        state_.phase = Phase::Answer;
        return Action::Pass;
      }
      if (state_.phase == Phase::Answer && state_.awaiting_natural_close) {
        state_.awaiting_natural_close = false;
        return Action::Suppress;
      }
      fail(ErrorCode::MalformedStream, state_.phase == Phase::BeforeThink
                                           ? "think_close without think_open"
                                           : "second think_close in one stream");

    case Event::Token:
      break;
  }

  if (state_.phase == Phase::Reasoning) {
    if (!admit()) return Action::Stop;
    ++state_.reasoning_tokens;
    if (state_.reasoning_tokens >= config_.reasoning_budget) state_.phase = Phase::Grace;
    return Action::Pass;
  }
  if (state_.phase == Phase::Grace) {
    if (!admit()) return Action::Stop;
    if (state_.grace_used < config_.grace) {
      ++state_.grace_used;
      ++state_.reasoning_tokens;
      return Action::Pass;
    }
    state_.phase = Phase::Answer;
    state_.awaiting_natural_close = true;
    ++state_.forced_closures;
    return Action::InjectThinkClose;
  }
  if (!admit()) return Action::Stop;
  return Action::Pass;
}

StreamStats BudgetController::finalize() const {
  require(state_.phase == Phase::Closed, ErrorCode::InvalidState,
          "finalize called before the stream ended");
  return {state_.reasoning_tokens, state_.total_tokens, state_.forced_closures,
          state_.stopped_at_cap};
}

std::vector<Event> parse_trace(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view word = std::string_view(line).substr(first, last - first + 1);
    if (word == "OPEN") {
      events.push_back(Event::ThinkOpen);
    } else if (word == "CLOSE") {
      events.push_back(Event::ThinkClose);
    } else if (word == "TOK") {
      events.push_back(Event::Token);
    } else if (word == "END") {
      events.push_back(Event::End);
    } else {
      fail(ErrorCode::Parse, "trace line " + std::to_string(line_no) + ": unknown event '" +
                                 std::string(word) + "'");
    }
  }
  return events;
}

ReplayResult replay(const std::vector<Event>& events, const BudgetConfig& config) {
  BudgetController controller(config);
  ReplayResult result;
  for (const Event event : events) {
    const Action action = controller.on_token(event);
    result.actions.push_back(action);
    if (action == Action::InjectThinkClose) ++result.injected;
    if (action == Action::Suppress) ++result.suppressed;
    if (action == Action::Stop || controller.state().phase == Phase::Closed) break;
  }
  if (controller.state().phase != Phase::Closed) controller.on_token(Event::End);
  result.stats = controller.finalize();
  return result;
}

}  // namespace omnitok::budget
