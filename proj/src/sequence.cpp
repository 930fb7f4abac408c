#include "rir/sequence.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "rir/units.hpp"

namespace rir {

bool SequenceFile::has_read() const {
  for (const auto& s : steps)
    if (s.kind == SequenceStep::Kind::read) return true;
  return false;
}

MemoryTimeline SequenceFile::to_timeline() const {
  MemoryTimeline tl;
  bool read_seen = false;
  for (const auto& s : steps) {
    switch (s.kind) {
      case SequenceStep::Kind::write:
        tl.write_duration = s.duration;
        tl.write_delta = s.delta;
        break;
      case SequenceStep::Kind::store:
        tl.storage_time += s.duration;
        break;
      case SequenceStep::Kind::read:
        tl.read = s.waveform;
        read_seen = true;
        break;
    }
  }
  if (!read_seen)
    throw std::invalid_argument("sequence has no read step");
  return tl;
}

namespace {

using KeyValues = std::map<std::string, std::string>;

KeyValues split_pairs(int line_no, std::istringstream& in) {
  KeyValues kv;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= token.size())
      throw SequenceError(line_no, "expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (kv.count(key))
      throw SequenceError(line_no, "duplicate key '" + key + "'");
    kv[key] = token.substr(eq + 1);
  }
  return kv;
}

std::string take(KeyValues& kv, const std::string& key, int line_no) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw SequenceError(line_no, "missing key '" + key + "'");
  std::string v = it->second;
  kv.erase(it);
  return v;
}

double take_quantity(KeyValues& kv, const std::string& key, Quantity q,
                     int line_no) {
  const std::string raw = take(kv, key, line_no);
  try {
    return parse_quantity(raw, q);
  } catch (const std::invalid_argument& e) {
    throw SequenceError(line_no, std::string(key) + ": " + e.what());
  }
}

void reject_leftover(const KeyValues& kv, const char* step, int line_no) {
  if (!kv.empty())
    throw SequenceError(line_no, "unknown key '" + kv.begin()->first +
                                     "' in " + step + " step");
}

}  // namespace

SequenceFile parse_sequence(std::string_view text) {
  SequenceFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool read_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream tokens(line);
    std::string kind;
    if (!(tokens >> kind)) continue;  // blank or comment-only line

    if (read_seen)
      throw SequenceError(line_no, "no steps allowed after the read step");

    if (kind == "write") {
      if (!file.steps.empty())
        throw SequenceError(line_no, "only one write step is allowed");
      auto kv = split_pairs(line_no, tokens);
      SequenceStep step{SequenceStep::Kind::write, line_no};
      step.duration = take_quantity(kv, "duration", Quantity::time_s, line_no);
      step.delta = take_quantity(kv, "delta", Quantity::angular_rad_s, line_no);
      reject_leftover(kv, "write", line_no);
      if (!(step.duration > 0.0))
        throw SequenceError(line_no, "duration must be positive");
      file.steps.push_back(step);
    } else if (kind == "store") {
      if (file.steps.empty())
        throw SequenceError(line_no, "sequence must begin with write");
      auto kv = split_pairs(line_no, tokens);
      SequenceStep step{SequenceStep::Kind::store, line_no};
      step.duration = take_quantity(kv, "duration", Quantity::time_s, line_no);
      reject_leftover(kv, "store", line_no);
      if (!(step.duration > 0.0))
        throw SequenceError(line_no, "duration must be positive");
      file.steps.push_back(step);
    } else if (kind == "read") {
      if (file.steps.empty())
        throw SequenceError(line_no, "sequence must begin with write");
      auto kv = split_pairs(line_no, tokens);
      SequenceStep step{SequenceStep::Kind::read, line_no};
      const std::string wave_kind = take(kv, "kind", line_no);
      if (wave_kind == "cw") {
        step.waveform.kind = ReadKind::continuous;
      } else if (wave_kind == "square") {
        step.waveform.kind = ReadKind::square_modulated;
      } else {
        throw SequenceError(line_no,
                            "kind must be cw or square, got '" + wave_kind + "'");
      }
      step.waveform.intensity =
          take_quantity(kv, "intensity", Quantity::intensity_w_m2, line_no);
      step.waveform.duration =
          take_quantity(kv, "duration", Quantity::time_s, line_no);
      if (step.waveform.kind == ReadKind::square_modulated) {
        step.waveform.period =
            take_quantity(kv, "period", Quantity::time_s, line_no);
        step.waveform.duty =
            take_quantity(kv, "duty", Quantity::dimensionless, line_no);
      }
      reject_leftover(kv, "read", line_no);
      if (!(step.waveform.duration > 0.0))
        throw SequenceError(line_no, "duration must be positive");
      if (step.waveform.intensity < 0.0)
        throw SequenceError(line_no, "intensity must be >= 0");
      if (step.waveform.kind == ReadKind::square_modulated) {
        if (!(step.waveform.period > 0.0))
          throw SequenceError(line_no, "period must be positive");
        if (!(step.waveform.duty > 0.0 && step.waveform.duty < 1.0))
          throw SequenceError(line_no, "duty must lie in (0, 1)");
      }
      step.duration = step.waveform.duration;
      read_seen = true;
      file.steps.push_back(step);
    } else {
      throw SequenceError(line_no, "unknown step '" + kind + "'");
    }
  }

  if (file.steps.empty())
    throw SequenceError(line_no > 0 ? line_no : 1,
                        "sequence must begin with write");
  return file;
}

SequenceFile read_sequence_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("sequence: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_sequence(buf.str());
}

}  // namespace rir
