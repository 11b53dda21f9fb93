#include "eprwmr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace eprwmr {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::vector<std::string> cells;
    std::size_t cell_start = pos;
    for (std::size_t i = pos; i <= eol; ++i) {
      if (i == eol || text[i] == ',') {
        cells.emplace_back(text, cell_start, i - cell_start);
        cell_start = i + 1;
      }
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size()) {
        std::ostringstream msg;
        msg << "CSV row " << table.rows.size() + 1 << " has " << cells.size()
            << " cells, header has " << table.header.size();
        throw std::runtime_error(msg.str());
      }
      table.rows.push_back(std::move(cells));
    }
    pos = eol + 1;
  }
  if (first) throw std::runtime_error("CSV is empty");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  return parse_csv(read_text_file(path));
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw WriteError("cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    throw WriteError("failed while writing '" + path.string() + "'");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trajectory_csv(const TrajectoryEnsemble& e) {
  std::string out;
  const bool single = e.single_mode();
  out += single ? "t,run,x,p,dir_x,dir_p\n"
                : "t,run,xA,pA,xB,pB,dir_xA,dir_pA,dir_xB,dir_pB\n";
  const std::string dir_xa = to_string(e.directions[0]);
  const std::string dir_pa = to_string(e.directions[1]);
  const std::string dir_xb = to_string(e.directions[2]);
  const std::string dir_pb = to_string(e.directions[3]);
  for (int k = 0; k < e.n_times(); ++k) {
    const std::string t = fmt9(e.times[static_cast<std::size_t>(k)]);
    for (int i = 0; i < e.config.n_traj; ++i) {
      out += t;
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += fmt9(e.at(Var::x_a, i, k));
      out += ',';
      out += fmt9(e.at(Var::p_a, i, k));
      if (!single) {
        out += ',';
        out += fmt9(e.at(Var::x_b, i, k));
        out += ',';
        out += fmt9(e.at(Var::p_b, i, k));
      }
      out += ',';
      out += dir_xa;
      out += ',';
      out += dir_pa;
      if (!single) {
        out += ',';
        out += dir_xb;
        out += ',';
        out += dir_pb;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace eprwmr
