#include "egrlab/infodyn/chain_spec.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace egrlab::infodyn {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_matrix(const json& rows_json) {
  if (!rows_json.is_array() || rows_json.empty()) {
    throw ConfigError("matrix must be a non-empty array of rows");
  }
  const Eigen::Index nrows = static_cast<Eigen::Index>(rows_json.size());
  const Eigen::Index ncols = static_cast<Eigen::Index>(rows_json[0].size());
  Eigen::MatrixXd m(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const auto& row = rows_json[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != ncols) {
      throw ConfigError("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < ncols; ++c) {
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

DiscreteJoint parse_init(const json& init, Eigen::Index ne, Eigen::Index ns,
                         rng::Engine& eng) {
  const std::string kind = init.value("kind", "random");
  if (kind == "random") {
    return random_joint(ne, ns, eng);
  }
  if (kind == "uniform-diagonal") {
    if (ne != ns) {
      throw ConfigError("uniform-diagonal init needs equal alphabets");
    }
    return diagonal_uniform_joint(ne);
  }
  if (kind == "table") {
    return DiscreteJoint(parse_matrix(init.at("table")));
  }
  throw ConfigError("unknown init kind: " + kind);
}

ChainStep parse_step(const json& step, Eigen::Index ne, Eigen::Index& ns,
                     rng::Engine& eng) {
  const std::string kind = step.at("kind").get<std::string>();
  if (kind == "closed") {
    Eigen::Index out = step.value("output_alphabet", static_cast<json::number_integer_t>(ns));
    Channel c = [&] {
      if (step.contains("rows")) {
        return Channel(parse_matrix(step.at("rows")));
      }
      const std::string channel = step.value("channel", "random");
      if (channel == "random") {
        return random_channel(ns, out, eng);
      }
      if (channel == "identity") {
        return Channel::identity(ns);
      }
      if (channel == "constant") {
        return Channel::constant(ns, 0);
      }
      throw ConfigError("unknown channel kind: " + channel);
    }();
    ns = c.output_size();
    return c;
  }
  if (kind == "open") {
    EvidenceAugmentChannel a = [&] {
      if (step.contains("rows")) {
        return EvidenceAugmentChannel(parse_matrix(step.at("rows")), ne, ns);
      }
      const std::string mode = step.value("mode", "random");
      if (mode == "random") {
        const Eigen::Index aux = step.value("aux_alphabet", static_cast<json::number_integer_t>(2));
        return random_augment_channel(ne, ns, aux, eng);
      }
      if (mode == "evidence-copy") {
        return EvidenceAugmentChannel::evidence_copy(ne, ns);
      }
      if (mode == "noisy-evidence-copy") {
        return EvidenceAugmentChannel::noisy_evidence_copy(ne, ns,
                                                           step.value("flip_prob", 0.0));
      }
      throw ConfigError("unknown open-step mode: " + mode);
    }();
    ns = ns * a.aux_size();
    return a;
  }
  if (kind == "vote") {
    VoteMap vote;
    vote.verdict_count = step.at("verdicts").get<Eigen::Index>();
    if (step.contains("map") && step.at("map").is_array()) {
      for (const auto& v : step.at("map")) {
        vote.verdict_of_state.push_back(v.get<Eigen::Index>());
      }
    } else {
      // Contiguous blocks of states share a verdict (a majority-style merge).
      for (Eigen::Index x = 0; x < ns; ++x) {
        vote.verdict_of_state.push_back(x * vote.verdict_count / ns);
      }
    }
    ns = vote.verdict_count;
    return vote;
  }
  throw ConfigError("unknown step kind: " + kind);
}

}  // namespace

ChainSpec load_chain_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open chain spec: " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("chain spec is not valid JSON: " + std::string(e.what()));
  }

  const Eigen::Index ne = doc.at("evidence_alphabet").get<Eigen::Index>();
  Eigen::Index ns = doc.at("state_alphabet").get<Eigen::Index>();
  const std::uint64_t seed = doc.value("seed", static_cast<json::number_unsigned_t>(0));
  rng::Engine eng(seed);

  DiscreteJoint init = parse_init(doc.value("init", json{{"kind", "random"}}), ne, ns, eng);
  std::vector<ChainStep> steps;
  for (const auto& step : doc.value("steps", json::array())) {
    steps.push_back(parse_step(step, ne, ns, eng));
  }
  return ChainSpec{ne, doc.at("state_alphabet").get<Eigen::Index>(), seed,
                   std::move(init), std::move(steps)};
}

void write_trajectory_csv(const ChainTrajectory& t, std::ostream& out) {
  out << "round,mi_bits,regime\n";
  out << std::setprecision(17);
  const std::string regime = to_string(t.regime);
  for (std::size_t r = 0; r < t.mi_per_round.size(); ++r) {
    out << r << ',' << t.mi_per_round[r] << ',' << regime << '\n';
  }
}

void write_trajectory_csv(const ChainTrajectory& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write trajectory CSV: " + path.string());
  }
  write_trajectory_csv(t, out);
}

}  // namespace egrlab::infodyn
