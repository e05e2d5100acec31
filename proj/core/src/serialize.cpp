#include "bondalt/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bondalt/errors.hpp"

namespace bondalt {

using nlohmann::json;

std::string state_to_json(const Imps& state) {
  state.validate();
  json j;
  j["format"] = "bondalt-imps";
  j["version"] = 1;
  j["period"] = state.period;
  j["chi_max"] = state.chi_max;

  std::vector<int> bond_dims(state.period);
  for (int k = 0; k < state.period; ++k) bond_dims[k] = static_cast<int>(state.bond_dim(k));
  j["bond_dims"] = bond_dims;

  json lambdas = json::array();
  for (const auto& lam : state.lambdas) {
    json row = json::array();
    for (Eigen::Index i = 0; i < lam.size(); ++i) row.push_back(lam(i));
    lambdas.push_back(std::move(row));
  }
  j["lambdas"] = std::move(lambdas);

  json gammas = json::array();
  for (int k = 0; k < state.period; ++k) {
    json site = json::array();
    for (int s = 0; s < 2; ++s) {
      const Matrix& g = state.gammas[k][s];
      json flat = json::array();
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
          flat.push_back(g(r, c).real());
          flat.push_back(g(r, c).imag());
        }
      }
      site.push_back(std::move(flat));
    }
    gammas.push_back(std::move(site));
  }
  j["gammas"] = std::move(gammas);
  return j.dump(2) + "\n";
}

Imps state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("state_from_json: parse failure: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "bondalt-imps") {
      throw InvalidInputError("state_from_json: unrecognized format field");
    }
    if (j.at("version").get<int>() != 1) {
      throw InvalidInputError("state_from_json: unsupported version");
    }
    Imps state;
    state.period = j.at("period").get<int>();
    state.chi_max = j.at("chi_max").get<int>();
    if (state.period < 1) throw InvalidInputError("state_from_json: bad period");

    const auto bond_dims = j.at("bond_dims").get<std::vector<int>>();
    const auto& lambdas = j.at("lambdas");
    const auto& gammas = j.at("gammas");
    if (static_cast<int>(bond_dims.size()) != state.period ||
        static_cast<int>(lambdas.size()) != state.period ||
        static_cast<int>(gammas.size()) != state.period) {
      throw InvalidInputError("state_from_json: field lengths do not match period");
    }

    state.lambdas.resize(state.period);
    state.gammas.resize(state.period);
    for (int k = 0; k < state.period; ++k) {
      const auto row = lambdas.at(k).get<std::vector<double>>();
      if (static_cast<int>(row.size()) != bond_dims[k]) {
        throw InvalidInputError("state_from_json: lambda length does not match bond dimension");
      }
      state.lambdas[k] = Eigen::Map<const RealVector>(row.data(), row.size());

      const int dl = bond_dims[(k - 1 + state.period) % state.period];
      const int dr = bond_dims[k];
      for (int s = 0; s < 2; ++s) {
        const auto flat = gammas.at(k).at(s).get<std::vector<double>>();
        if (static_cast<int>(flat.size()) != 2 * dl * dr) {
          throw InvalidInputError("state_from_json: gamma length does not match bond dimensions");
        }
        Matrix g(dl, dr);
        std::size_t idx = 0;
        for (int r = 0; r < dl; ++r) {
          for (int c = 0; c < dr; ++c) {
            g(r, c) = Complex(flat[idx], flat[idx + 1]);
            idx += 2;
          }
        }
        state.gammas[k][s] = std::move(g);
      }
    }
    state.validate();
    return state;
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("state_from_json: malformed container: ") + e.what());
  }
}

void save_state(const Imps& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_state: cannot open " + path.string() + " for writing");
  out << state_to_json(state);
  if (!out) throw IoError("save_state: write failed for " + path.string());
}

Imps load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_state: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace bondalt
