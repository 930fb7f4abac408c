#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rir/protocol.hpp"

// Pulse-sequence files: one step per line,
//
//   write duration=100us delta=0
//   store duration=10us
//   read kind=cw intensity=140mw/cm2 duration=200us
//   read kind=square intensity=140mw/cm2 duration=200us period=20us duty=0.5
//
// `#` starts a comment. Exactly one write step, first; store steps add up;
// at most one read step, last.
namespace rir {

struct SequenceError : std::runtime_error {
  SequenceError(int line_no, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + message),
        line(line_no) {}
  int line;
};

struct SequenceStep {
  enum class Kind { write, store, read };
  Kind kind;
  int line = 0;
  double duration = 0.0;   // s
  double delta = 0.0;      // rad/s, write only
  ReadWaveform waveform;   // read only
};

struct SequenceFile {
  std::vector<SequenceStep> steps;

  bool has_read() const;
  // Collapses the steps into one timeline; throws std::invalid_argument
  // when no read step is present.
  MemoryTimeline to_timeline() const;
};

SequenceFile parse_sequence(std::string_view text);
SequenceFile read_sequence_file(const std::string& path);

}  // namespace rir
