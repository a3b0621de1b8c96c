#include "hmap/aod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace hmap {

std::vector<std::vector<Move>> groupMoves(std::span<const Move> moves) {
  std::vector<std::vector<Move>> groups;
  const auto fits = [](const std::vector<Move>& group, const Move& move) {
    std::set<std::int32_t> rows{move.from.y};
    for (const auto& m : group) {
      if (m.displacement() != move.displacement() || m.atom == move.atom ||
          m.from == move.from || m.to == move.to || m.from == move.to ||
          m.to == move.from) {
        return false;
      }
      rows.insert(m.from.y);
    }
    return rows.size() <= MAX_LOAD_PHASES;
  };
  for (const auto& move : moves) {
    if (groups.empty() || !fits(groups.back(), move)) {
      groups.emplace_back();
    }
    groups.back().push_back(move);
  }
  return groups;
}

AodGroup lowerGroup(const std::vector<Move>& moves, const HardwareSpec& spec) {
  AodGroup group;
  group.moves = moves;
  if (moves.empty()) {
    return group;
  }
  const auto shift = moves.front().displacement();
  const double dx = shift.x * spec.d;
  const double dy = shift.y * spec.d;

  // Origin rows in order of first appearance.
  std::vector<std::int32_t> phases;
  for (const auto& m : moves) {
    if (std::ranges::find(phases, m.from.y) == phases.end()) {
      phases.push_back(m.from.y);
    }
  }
  const auto phaseMoves = [&](std::int32_t row) {
    std::vector<Move> out;
    for (const auto& m : moves) {
      if (m.from.y == row) {
        out.push_back(m);
      }
    }
    std::ranges::sort(out, {}, [](const Move& m) { return m.from.x; });
    return out;
  };

  double t = 0.0;
  const auto emit = [&](AodOperation op) {
    op.start = t;
    t += op.duration;
    group.ops.push_back(std::move(op));
  };
  const auto activate = [&](std::int32_t row) {
    AodOperation op{AodOpKind::Activate, {}, {row * spec.d}, 0, 0, 0, spec.tAct, {}};
    for (const auto& m : phaseMoves(row)) {
      op.cols.push_back(m.from.x * spec.d);
      op.load.push_back(m.atom);
    }
    emit(std::move(op));
  };
  const auto deactivate = [&](std::int32_t row) {
    AodOperation op{AodOpKind::Deactivate, {}, {(row + shift.y) * spec.d},
                    0, 0, 0, spec.tDeact, {}};
    for (const auto& m : phaseMoves(row)) {
      op.cols.push_back(m.to.x * spec.d);
    }
    emit(std::move(op));
  };
  const auto shiftAll = [&](double sx, double sy) {
    emit({AodOpKind::Shift, {}, {}, sx, sy, 0,
          (std::abs(sx) + std::abs(sy)) / spec.v, {}});
  };

  const double offset = spec.d / 4;
  if (phases.size() == 1) {
    activate(phases.front());
    shiftAll(dx, dy);
    deactivate(phases.front());
  } else {
    for (const auto row : phases) {
      activate(row);
      shiftAll(offset, offset);
    }
    shiftAll(dx, dy);
    for (auto it = phases.rbegin(); it != phases.rend(); ++it) {
      shiftAll(-offset, -offset);
      deactivate(*it);
    }
  }
  group.duration = t;
  return group;
}

std::vector<AodGroup> lowerMoves(std::span<const Move> moves,
                                 const HardwareSpec& spec) {
  std::vector<AodGroup> out;
  for (const auto& group : groupMoves(moves)) {
    out.push_back(lowerGroup(group, spec));
  }
  return out;
}

AodSchedule sequential(std::span<const AodGroup> groups) {
  AodSchedule schedule;
  double offset = 0.0;
  for (const auto& group : groups) {
    for (auto op : group.ops) {
      op.start += offset;
      schedule.ops.push_back(std::move(op));
    }
    offset += group.duration;
  }
  return schedule;
}

std::string_view toString(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Ordering:
    return "ordering";
  case ViolationKind::GhostSpot:
    return "ghost-spot";
  case ViolationKind::Landing:
    return "landing";
  case ViolationKind::Load:
    return "load";
  }
  return "?";
}

namespace {

struct Line {
  double pos = 0.0;
  bool alive = true;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double segmentDistance(Point p, Point a, Point b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0) {
    t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  }
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

class Simulator {
public:
  Simulator(const std::vector<Coordinate>& sites, const HardwareSpec& spec)
      : spec_(spec), ghost_(spec.d / 10), match_(1e-6 * spec.d),
        static_(sites.size()), grid_(spec.sites(), NONE), attached_(sites.size()) {
    for (std::size_t a = 0; a < sites.size(); ++a) {
      static_[a] = sites[a];
      grid_[spec.siteIndex(sites[a])] = static_cast<std::int64_t>(a);
    }
  }

  std::optional<Violation> apply(const AodOperation& op) {
    time_ = op.start;
    switch (op.kind) {
    case AodOpKind::Activate:
      return activate(op);
    case AodOpKind::Shift:
      return shift(op);
    case AodOpKind::Deactivate:
      return deactivate(op);
    }
    return std::nullopt;
  }

  std::optional<Violation> finish() {
    for (std::size_t a = 0; a < attached_.size(); ++a) {
      if (attached_[a]) {
        return fail(ViolationKind::Landing,
                    "atom " + std::to_string(a) + " still loaded at the end");
      }
    }
    return std::nullopt;
  }

  std::vector<Coordinate> sites() const {
    std::vector<Coordinate> out;
    for (const auto& s : static_) {
      out.push_back(s.value_or(Coordinate{-1, -1}));
    }
    return out;
  }

private:
  static constexpr std::int64_t NONE = -1;
  const HardwareSpec& spec_;
  double ghost_;
  double match_;
  std::vector<std::optional<Coordinate>> static_;
  std::vector<std::int64_t> grid_;
  std::vector<Line> cols_;
  std::vector<Line> rows_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> attached_;
  double time_ = 0.0;

  Violation fail(ViolationKind kind, std::string message) const {
    std::ostringstream out;
    out << message << " at t=" << time_;
    return {kind, time_, out.str()};
  }

  /// Static atom within the ghost tolerance of `p`.
  std::optional<HwQubit> staticNear(Point p) const {
    const auto gx = static_cast<std::int32_t>(std::lround(p.x / spec_.d));
    const auto gy = static_cast<std::int32_t>(std::lround(p.y / spec_.d));
    const Coordinate c{gx, gy};
    if (!spec_.inBounds(c) ||
        std::hypot(p.x - gx * spec_.d, p.y - gy * spec_.d) >= ghost_) {
      return std::nullopt;
    }
    const auto atom = grid_[spec_.siteIndex(c)];
    if (atom == NONE) {
      return std::nullopt;
    }
    return static_cast<HwQubit>(atom);
  }

  bool holdsAtom(std::size_t col, std::size_t row) const {
    return std::ranges::any_of(attached_, [&](const auto& a) {
      return a && a->first == col && a->second == row;
    });
  }

  static std::optional<std::size_t> find(const std::vector<Line>& lines,
                                         double pos, double tol) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].alive && std::abs(lines[i].pos - pos) <= tol) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::optional<Violation> activate(const AodOperation& op) {
    std::set<std::size_t> newCols;
    std::set<std::size_t> newRows;
    for (const double x : op.cols) {
      if (find(cols_, x, match_)) {
        return fail(ViolationKind::Ordering, "column activated on an active column");
      }
      newCols.insert(cols_.size());
      cols_.push_back({x, true});
    }
    for (const double y : op.rows) {
      if (find(rows_, y, match_)) {
        return fail(ViolationKind::Ordering, "row activated on an active row");
      }
      newRows.insert(rows_.size());
      rows_.push_back({y, true});
    }
    const std::set<HwQubit> wanted(op.load.begin(), op.load.end());
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!cols_[c].alive || !rows_[r].alive ||
            (!newCols.contains(c) && !newRows.contains(r))) {
          continue;
        }
        const auto atom = staticNear({cols_[c].pos, rows_[r].pos});
        if (!atom) {
          continue;
        }
        if (!wanted.contains(*atom)) {
          return fail(ViolationKind::GhostSpot,
                      "activation traps atom " + std::to_string(*atom));
        }
        grid_[spec_.siteIndex(*static_[*atom])] = NONE;
        static_[*atom].reset();
        attached_[*atom] = std::pair{c, r};
      }
    }
    for (const auto atom : op.load) {
      if (atom >= attached_.size() || !attached_[atom]) {
        return fail(ViolationKind::Load,
                    "atom " + std::to_string(atom) + " not at a line intersection");
      }
    }
    return std::nullopt;
  }

  std::optional<Violation> shift(const AodOperation& op) {
    std::vector<bool> colMoves(cols_.size(), false);
    std::vector<bool> rowMoves(rows_.size(), false);
    const bool all = op.cols.empty() && op.rows.empty();
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      colMoves[c] = cols_[c].alive && all;
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      rowMoves[r] = rows_[r].alive && all;
    }
    for (const double x : op.cols) {
      const auto c = find(cols_, x, match_);
      if (!c) {
        return fail(ViolationKind::Load, "shift of an inactive column");
      }
      colMoves[*c] = true;
    }
    for (const double y : op.rows) {
      const auto r = find(rows_, y, match_);
      if (!r) {
        return fail(ViolationKind::Load, "shift of an inactive row");
      }
      rowMoves[*r] = true;
    }

    const auto crosses = [&](const std::vector<Line>& lines,
                             const std::vector<bool>& moving, double delta) {
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!moving[i]) {
          continue;
        }
        for (std::size_t j = 0; j < lines.size(); ++j) {
          if (!lines[j].alive || moving[j]) {
            continue;
          }
          const double before = lines[i].pos - lines[j].pos;
          const double after = before + delta;
          if (std::abs(after) <= match_ || (before > 0) != (after > 0)) {
            return true;
          }
        }
      }
      return false;
    };
    if (crosses(cols_, colMoves, op.dx) || crosses(rows_, rowMoves, op.dy)) {
      return fail(ViolationKind::Ordering, "AOD lines cross during a shift");
    }

    for (std::size_t c = 0; c < cols_.size(); ++c) {
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!cols_[c].alive || !rows_[r].alive || (!colMoves[c] && !rowMoves[r]) ||
            holdsAtom(c, r)) {
          continue;
        }
        const Point p0{cols_[c].pos, rows_[r].pos};
        const Point p1{p0.x + (colMoves[c] ? op.dx : 0.0), p0.y};
        const Point p2{p1.x, p1.y + (rowMoves[r] ? op.dy : 0.0)};
        for (std::size_t a = 0; a < static_.size(); ++a) {
          if (!static_[a]) {
            continue;
          }
          const Point s{static_[a]->x * spec_.d, static_[a]->y * spec_.d};
          if (segmentDistance(s, p0, p1) < ghost_ ||
              segmentDistance(s, p1, p2) < ghost_) {
            return fail(ViolationKind::GhostSpot,
                        "empty intersection passes atom " + std::to_string(a));
          }
        }
      }
    }
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (colMoves[c]) {
        cols_[c].pos += op.dx;
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rowMoves[r]) {
        rows_[r].pos += op.dy;
      }
    }
    return std::nullopt;
  }

  std::optional<Violation> deactivate(const AodOperation& op) {
    std::set<std::size_t> deadCols;
    std::set<std::size_t> deadRows;
    for (const double x : op.cols) {
      const auto c = find(cols_, x, match_);
      if (!c) {
        return fail(ViolationKind::Load, "deactivation of an inactive column");
      }
      deadCols.insert(*c);
    }
    for (const double y : op.rows) {
      const auto r = find(rows_, y, match_);
      if (!r) {
        return fail(ViolationKind::Load, "deactivation of an inactive row");
      }
      deadRows.insert(*r);
    }
    for (const auto c : deadCols) {
      cols_[c].alive = false;
    }
    for (const auto r : deadRows) {
      rows_[r].alive = false;
    }
    for (std::size_t a = 0; a < attached_.size(); ++a) {
      if (!attached_[a]) {
        continue;
      }
      const auto [c, r] = *attached_[a];
      if (cols_[c].alive && rows_[r].alive) {
        continue;
      }
      const double x = cols_[c].pos;
      const double y = rows_[r].pos;
      const Coordinate site{static_cast<std::int32_t>(std::lround(x / spec_.d)),
                            static_cast<std::int32_t>(std::lround(y / spec_.d))};
      if (!spec_.inBounds(site) ||
          std::hypot(x - site.x * spec_.d, y - site.y * spec_.d) >= ghost_) {
        return fail(ViolationKind::Landing,
                    "atom " + std::to_string(a) + " released off the lattice");
      }
      if (grid_[spec_.siteIndex(site)] != NONE) {
        return fail(ViolationKind::Landing,
                    "atom " + std::to_string(a) + " released on an occupied site");
      }
      grid_[spec_.siteIndex(site)] = static_cast<std::int64_t>(a);
      static_[a] = site;
      attached_[a].reset();
    }
    return std::nullopt;
  }
};

} // namespace

ValidationResult validateSchedule(const AodSchedule& schedule,
                                  const std::vector<Coordinate>& sites,
                                  const HardwareSpec& spec) {
  auto ops = schedule.ops;
  std::ranges::stable_sort(ops, {}, &AodOperation::start);
  Simulator sim(sites, spec);
  ValidationResult result;
  for (const auto& op : ops) {
    if (auto v = sim.apply(op)) {
      result.violation = std::move(v);
      return result;
    }
  }
  result.violation = sim.finish();
  result.finalSites = sim.sites();
  return result;
}

} // namespace hmap
