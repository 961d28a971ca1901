#include "cellricci/complex_io.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "cellricci/errors.hpp"

namespace cellricci {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct FaceLine {
  std::size_t line;
  std::string tau;
  std::string sigma;
  int sign;
};

}  // namespace

CellComplex parse_complex(std::string_view text) {
  ComplexBuilder builder;
  std::unordered_map<std::string, std::size_t> declared_at;
  std::vector<FaceLine> faces;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (tok[0] == "cell") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'cell <id> <dim>'");
      int dim = -1;
      auto [p, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), dim);
      if (ec != std::errc{} || p != tok[2].data() + tok[2].size() || dim < 0) {
        throw ParseError(line_no, "bad dimension '" + std::string(tok[2]) + "'");
      }
      std::string id(tok[1]);
      if (auto prev = declared_at.find(id); prev != declared_at.end()) {
        throw ParseError(line_no, "duplicate cell id '" + id + "' (first declared on line " +
                                      std::to_string(prev->second) + ")");
      }
      declared_at.emplace(id, line_no);
      builder.add_cell(std::move(id), dim);
    } else if (tok[0] == "face") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'face <tau-id> <sigma-id> <+1|-1>'");
      int sign = 0;
      if (tok[3] == "+1") {
        sign = 1;
      } else if (tok[3] == "-1") {
        sign = -1;
      } else {
        throw ParseError(line_no, "bad sign token '" + std::string(tok[3]) + "' (expected +1 or -1)");
      }
      faces.push_back({line_no, std::string(tok[1]), std::string(tok[2]), sign});
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
    if (end == text.size()) break;
  }

  for (const auto& f : faces) {
    auto tau = builder.find(f.tau);
    auto sigma = builder.find(f.sigma);
    if (!tau) throw ParseError(f.line, "face references undeclared cell '" + f.tau + "'");
    if (!sigma) throw ParseError(f.line, "face references undeclared cell '" + f.sigma + "'");
    try {
      builder.add_incidence(*tau, *sigma, f.sign);
    } catch (const ComplexError& e) {
      throw ParseError(f.line, e.what());
    }
  }
  return std::move(builder).build();
}

CellComplex read_complex(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_complex(text);
}

void write_complex(std::ostream& out, const CellComplex& complex) {
  for (const auto& c : complex.cells()) out << "cell " << c.label << ' ' << c.dim << '\n';
  for (const auto& inc : complex.incidences()) {
    out << "face " << complex.label(inc.tau) << ' ' << complex.label(inc.sigma) << ' '
        << (inc.sign > 0 ? "+1" : "-1") << '\n';
  }
}

std::string serialize_complex(const CellComplex& complex) {
  std::ostringstream os;
  write_complex(os, complex);
  return os.str();
}

}  // namespace cellricci
