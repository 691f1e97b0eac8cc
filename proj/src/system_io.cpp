#include "cassini/system_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cassini {

namespace {

std::vector<double> read_entries(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("system file lacks matrix ") + key);
  }
  const auto& arr = doc.at(key);
  if (!arr.is_array()) {
    throw Error(ErrorKind::InvalidInput, std::string("matrix ") + key + " must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw Error(ErrorKind::InvalidInput,
                  std::string("matrix ") + key + " has a non-numeric entry");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

DampedSystem parse_system(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed system file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.at("n").is_number_integer()) {
    throw Error(ErrorKind::InvalidInput, "system file needs an integer field \"n\"");
  }
  const auto n = doc.at("n").get<long long>();
  if (n < 1) {
    throw Error(ErrorKind::InvalidInput, "field \"n\" must be positive");
  }
  const auto m = read_entries(doc, "M");
  const auto c = read_entries(doc, "C");
  const auto k = read_entries(doc, "K");
  return DampedSystem(SymMatrix::from_row_major(n, m, "M"), SymMatrix::from_row_major(n, c, "C"),
                      SymMatrix::from_row_major(n, k, "K"));
}

DampedSystem load_system(const std::filesystem::path& path) {
  return parse_system(read_file(path));
}

std::string system_to_json(const DampedSystem& system) {
  std::string out = "{\"n\": " + std::to_string(system.order());
  const auto emit = [&out](const char* key, const SymMatrix& s) {
    out += ", \"";
    out += key;
    out += "\": [";
    const auto entries = s.row_major();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += format_double(entries[i]);
    }
    out += "]";
  };
  emit("M", system.mass());
  emit("C", system.damping());
  emit("K", system.stiffness());
  out += "}\n";
  return out;
}

void save_system(const DampedSystem& system, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
  out << system_to_json(system);
  if (!out) {
    throw Error(ErrorKind::Io, "write failed for " + path.string());
  }
}

SymMatrix read_matrix_market(std::istream& in, std::string_view name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + ": empty Matrix Market stream");
  }
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw Error(ErrorKind::InvalidInput, std::string(name) + ": missing %%MatrixMarket header");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "double" && field != "integer") {
    throw Error(ErrorKind::InvalidInput, std::string(name) + ": unsupported field " + field);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + ": unsupported symmetry " + symmetry);
  }
  // skip comments and blank lines
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '%') {
      break;
    }
  }
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (format == "coordinate") {
    size_line >> rows >> cols >> nnz;
  } else if (format == "array") {
    size_line >> rows >> cols;
  } else {
    throw Error(ErrorKind::InvalidInput, std::string(name) + ": unsupported format " + format);
  }
  if (!size_line || rows < 1 || rows != cols) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + ": bad or non-square size line");
  }
  const bool symmetric = symmetry == "symmetric";
  Matrix m = Matrix::Zero(rows, cols);
  if (format == "coordinate") {
    for (long long e = 0; e < nnz; ++e) {
      long long i = 0, j = 0;
      double v = 0.0;
      if (!(in >> i >> j >> v)) {
        throw Error(ErrorKind::InvalidInput, std::string(name) + ": truncated coordinate data");
      }
      if (i < 1 || j < 1 || i > rows || j > cols) {
        throw Error(ErrorKind::InvalidInput, std::string(name) + ": index out of range");
      }
      m(i - 1, j - 1) = v;
      if (symmetric) {
        m(j - 1, i - 1) = v;
      }
    }
  } else {
    // column-major; the symmetric variant lists the lower triangle only
    for (long long j = 0; j < cols; ++j) {
      for (long long i = symmetric ? j : 0; i < rows; ++i) {
        double v = 0.0;
        if (!(in >> v)) {
          throw Error(ErrorKind::InvalidInput, std::string(name) + ": truncated array data");
        }
        m(i, j) = v;
        if (symmetric) {
          m(j, i) = v;
        }
      }
    }
  }
  return SymMatrix(m, name);
}

SymMatrix read_matrix_market_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  return read_matrix_market(in, path.filename().string());
}

}  // namespace cassini
