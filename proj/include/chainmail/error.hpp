#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainmail/element_set.hpp"

namespace chainmail {

enum class ErrorKind {
  axiom_violation,
  cycle_detected,
  index_out_of_range,
  duplicate_label,
  empty_input,
  not_a_lattice,
  not_a_chainmail,
  not_mail_connected,
  not_totally_disconnected,
  not_locally_connected_below,
  size_budget_exceeded,
  not_monotone,
  mail_join_not_preserved,
  joins_not_preserved,
  adjoint_fails_separated_joins,
  connected_not_preserved,
  not_join_preserving,
  theorem_violation,
  parse_error,
  io_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::axiom_violation: return "AxiomViolation";
    case ErrorKind::cycle_detected: return "CycleDetected";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::duplicate_label: return "DuplicateLabel";
    case ErrorKind::empty_input: return "EmptyInput";
    case ErrorKind::not_a_lattice: return "NotALattice";
    case ErrorKind::not_a_chainmail: return "NotAChainmail";
    case ErrorKind::not_mail_connected: return "NotMailConnected";
    case ErrorKind::not_totally_disconnected: return "NotTotallyDisconnected";
    case ErrorKind::not_locally_connected_below: return "NotLocallyConnectedBelow";
    case ErrorKind::size_budget_exceeded: return "SizeBudgetExceeded";
    case ErrorKind::not_monotone: return "NotMonotone";
    case ErrorKind::mail_join_not_preserved: return "MailJoinNotPreserved";
    case ErrorKind::joins_not_preserved: return "JoinsNotPreserved";
    case ErrorKind::adjoint_fails_separated_joins: return "AdjointFailsSeparatedJoins";
    case ErrorKind::connected_not_preserved: return "ConnectedNotPreserved";
    case ErrorKind::not_join_preserving: return "NotJoinPreserving";
    case ErrorKind::theorem_violation: return "TheoremViolation";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::io_error: return "IoError";
  }
  return "Unknown";
}

// Every structural "no" carries the elements that witness it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<Element> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<Element>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<Element> witness_;
};

}  // namespace chainmail
