#include "navgen/speaker.hpp"

#include <cmath>
#include <numbers>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

std::string InstructionRecord::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += tokens[i];
  }
  return out;
}

std::vector<TurnClass> classify_turns(const NavGraph &graph,
                                      const Trajectory &trajectory,
                                      const SpeakerParams &params) {
  const auto &ids = trajectory.node_ids;
  std::vector<TurnClass> out;
  if (ids.size() < 3) {
    return out;
  }
  out.reserve(ids.size() - 2);
  const double straight = params.straight_band_deg * std::numbers::pi / 180.0;
  const double around = params.around_band_deg * std::numbers::pi / 180.0;
  for (std::size_t i = 0; i + 2 < ids.size(); ++i) {
    const double b0 = bearing(graph.position(ids[i]), graph.position(ids[i + 1]));
    const double b1 =
        bearing(graph.position(ids[i + 1]), graph.position(ids[i + 2]));
    const double delta = wrap_angle(b1 - b0);
    const double mag = std::abs(delta);
    if (mag <= straight) {
      out.push_back(TurnClass::kStraight);
    } else if (mag > around) {
      out.push_back(TurnClass::kAround);
    } else {
      out.push_back(delta > 0.0 ? TurnClass::kLeft : TurnClass::kRight);
    }
  }
  return out;
}

namespace {

using Clause = std::vector<std::string>;

const std::vector<Clause> kStartClauses = {
    {"walk", "away", "from", "your", "starting", "point"},
    {"leave", "the", "area", "where", "you", "begin"},
    {"start", "moving", "out", "of", "the", "room"},
    {"head", "out", "from", "where", "you", "stand"},
};

const std::vector<Clause> kStartNearClauses = {
    {"walk", "away", "from", "the", "%"},
    {"leave", "the", "%", "behind", "you"},
    {"start", "at", "the", "%", "and", "move", "off"},
};

const std::vector<Clause> kStraightClauses = {
    {"go", "straight"},
    {"walk", "forward"},
    {"continue", "ahead"},
    {"keep", "going", "straight"},
    {"move", "ahead", "through", "the", "room"},
};

const std::vector<Clause> kLeftClauses = {
    {"turn", "left"},
    {"take", "a", "left"},
    {"make", "a", "left", "here"},
};

const std::vector<Clause> kRightClauses = {
    {"turn", "right"},
    {"take", "a", "right"},
    {"make", "a", "right", "here"},
};

const std::vector<Clause> kAroundClauses = {
    {"turn", "around"},
    {"turn", "around", "and", "go", "back"},
};

const std::vector<Clause> kStopClauses = {
    {"stop", "there", "and", "wait"},
    {"wait", "at", "the", "end", "of", "the", "way"},
    {"stop", "once", "you", "get", "there"},
    {"that", "is", "where", "you", "stop"},
};

const std::vector<Clause> kStopNearClauses = {
    {"stop", "next", "to", "the", "%"},
    {"wait", "beside", "the", "%"},
    {"stop", "when", "you", "reach", "the", "%"},
};

const std::vector<Clause> kFindClauses = {
    {"find", "the", "%", "and", "stop", "beside", "it"},
    {"go", "to", "the", "%", "and", "wait", "there"},
    {"look", "for", "the", "%", "and", "stop", "next", "to", "it"},
};

void append_clause(std::vector<std::string> &tokens, const Clause &clause,
                   const std::string &label = {}) {
  for (const std::string &word : clause) {
    if (word == "%") {
      tokens.push_back(label);
    } else {
      tokens.push_back(word);
    }
  }
}

const Clause &pick(const std::vector<Clause> &options, SeededRng &rng) {
  return options[static_cast<std::size_t>(
      rng.uniform_u64(0, options.size() - 1))];
}

// Lowest-id eligible object anchored at the given viewpoint, if any.
const ObjectAnnotation *object_at(const std::vector<ObjectAnnotation> &objects,
                                  int viewpoint) {
  const ObjectAnnotation *found = nullptr;
  for (const ObjectAnnotation &obj : objects) {
    if (obj.eligible && obj.anchor_viewpoint == viewpoint &&
        (found == nullptr || obj.object_id < found->object_id)) {
      found = &obj;
    }
  }
  return found;
}

const ObjectAnnotation *object_by_id(const std::vector<ObjectAnnotation> &objects,
                                     int id) {
  for (const ObjectAnnotation &obj : objects) {
    if (obj.object_id == id) {
      return &obj;
    }
  }
  return nullptr;
}

std::uint64_t trajectory_identity(const Trajectory &trajectory) {
  std::string key = trajectory.scene_id;
  key += '|';
  for (std::size_t i = 0; i < trajectory.node_ids.size(); ++i) {
    if (i > 0) {
      key += ',';
    }
    key += format_int(trajectory.node_ids[i]);
  }
  return fnv1a64(key);
}

}  // namespace

InstructionRecord generate_instruction(
    const OccupancyGrid &grid, const NavGraph &graph,
    const Trajectory &trajectory, const std::vector<ObjectAnnotation> &objects,
    std::uint64_t seed, const SpeakerParams &params) {
  (void)grid;
  if (trajectory.node_ids.size() < 2) {
    throw DataError("speaker: trajectory must have at least two nodes");
  }
  // Seed from (trajectory identity, seed) so the text does not depend on the
  // order trajectories are processed in.
  SeededRng rng(derive_seed(seed, "speaker", trajectory_identity(trajectory)));

  InstructionRecord record;
  std::vector<std::string> &tokens = record.tokens;

  const ObjectAnnotation *start_obj =
      object_at(objects, trajectory.node_ids.front());
  if (start_obj != nullptr) {
    append_clause(tokens, pick(kStartNearClauses, rng), start_obj->label);
  } else {
    append_clause(tokens, pick(kStartClauses, rng));
  }

  for (TurnClass turn : classify_turns(graph, trajectory, params)) {
    switch (turn) {
      case TurnClass::kStraight:
        append_clause(tokens, pick(kStraightClauses, rng));
        break;
      case TurnClass::kLeft:
        append_clause(tokens, pick(kLeftClauses, rng));
        break;
      case TurnClass::kRight:
        append_clause(tokens, pick(kRightClauses, rng));
        break;
      case TurnClass::kAround:
        append_clause(tokens, pick(kAroundClauses, rng));
        break;
    }
  }

  const ObjectAnnotation *goal_obj = nullptr;
  if (trajectory.target_object) {
    goal_obj = object_by_id(objects, *trajectory.target_object);
  }
  if (goal_obj == nullptr) {
    goal_obj = object_at(objects, trajectory.node_ids.back());
  }
  if (trajectory.style == TrajectoryStyle::kReverie && goal_obj != nullptr) {
    append_clause(tokens, pick(kFindClauses, rng), goal_obj->label);
  } else if (goal_obj != nullptr) {
    append_clause(tokens, pick(kStopNearClauses, rng), goal_obj->label);
  } else {
    append_clause(tokens, pick(kStopClauses, rng));
  }
  return record;
}

}  // namespace navgen
