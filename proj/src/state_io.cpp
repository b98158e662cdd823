#include "epi/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "epi/gallery.hpp"

namespace epi {

nlohmann::json state_to_json(const Ket& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (std::int64_t i = 0; i < psi.profile().total(); ++i) amps.push_back({psi[i].real(), psi[i].imag()});
  return {{"dims", psi.profile().dims()}, {"amplitudes", std::move(amps)}};
}

Ket state_from_json(const nlohmann::json& doc, std::ostream& warn) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("amplitudes")) {
    throw InputError("state file: expected an object with \"dims\" and \"amplitudes\"");
  }
  const auto& jd = doc.at("dims");
  const auto& ja = doc.at("amplitudes");
  if (!jd.is_array() || !ja.is_array()) throw InputError("state file: \"dims\" and \"amplitudes\" must be arrays");

  std::vector<int> dims;
  for (const auto& d : jd) {
    if (!d.is_number_integer()) throw InputError("state file: dims must be integers");
    dims.push_back(d.get<int>());
  }
  DimensionProfile profile(std::move(dims));
  if (static_cast<std::int64_t>(ja.size()) != profile.total()) {
    throw InputError("state file: " + std::to_string(ja.size()) + " amplitudes but dims multiply to " +
                     std::to_string(profile.total()));
  }
  CVector amps(profile.total());
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const auto& pair = ja[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError("state file: amplitude " + std::to_string(i) + " is not a [re, im] pair");
    }
    amps(static_cast<Eigen::Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }

  const double deviation = std::abs(amps.norm() - 1.0);
  if (!(deviation <= kStateFileWarnTol)) {
    throw InputError("state file: amplitude norm deviates from 1 by " + std::to_string(deviation));
  }
  if (deviation > kStateFileSilentTol) {
    warn << "warning: state norm deviates from 1 by " << deviation << "; renormalizing\n";
  }
  // Amplitudes already within the Ket tolerance load bit-for-bit.
  if (deviation <= tol::kNorm) return Ket(std::move(profile), std::move(amps));
  return Ket::normalized(std::move(profile), std::move(amps));
}

void write_state_file(const Ket& psi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_json(out, nlohmann::ordered_json(state_to_json(psi)));
  out << '\n';
}

Ket read_state_file(const std::string& path, std::ostream& warn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("state file '" + path + "': " + e.what());
  }
  return state_from_json(doc, warn);
}

Ket resolve_source(const std::string& source, std::ostream& warn) {
  if (source.starts_with(kGalleryPrefix)) return named_state(source.substr(kGalleryPrefix.size()));
  return read_state_file(source, warn);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& raw) {
  const std::string s = trim(raw);
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw InputError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

Partition parse_partition(const std::string& text, int parties) {
  if (trim(text).empty()) throw InputError("empty partition string");
  std::vector<Subsystems> blocks;
  for (const auto& block_text : split(text, '|')) {
    Subsystems block;
    if (trim(block_text).empty()) throw InputError("partition '" + text + "' has an empty block");
    for (const auto& member : split(block_text, ',')) {
      const int k = parse_int(member);
      if (k < 1 || k > parties) {
        throw InputError("partition member " + std::to_string(k) + " outside 1.." + std::to_string(parties));
      }
      block.push_back(k - 1);
    }
    blocks.push_back(std::move(block));
  }
  return Partition(std::move(blocks), parties);
}

std::string format_partition(const Partition& partition) {
  std::string out;
  for (int j = 0; j < partition.size(); ++j) {
    if (j > 0) out += '|';
    const auto& b = partition.block(j);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(b[i] + 1);
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& raw : split(text, ',')) {
    const std::string s = trim(raw);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw InputError("not a number: '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

std::string format_number(double v, int precision) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

namespace {

void write_value(std::ostream& os, const nlohmann::ordered_json& v, int precision) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) os << ',';
        first = false;
        os << nlohmann::json(key).dump() << ':';
        write_value(os, item, precision);
      }
      os << '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) os << ',';
        write_value(os, v[i], precision);
      }
      os << ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isfinite(d)) {
        os << format_number(d, precision);
      } else {
        os << "null";
      }
      break;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::ordered_json& doc, int precision) {
  write_value(os, doc, precision);
}

}  // namespace epi
