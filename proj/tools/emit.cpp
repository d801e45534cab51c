#include "emit.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace elp::cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(2 * indent, ' ');
  const std::string pad_in(2 * (indent + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(key).dump() + ": ";
        dump(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump(value, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += fmt17(j.get<double>());
      return;
    default:
      out += j.dump();  // strings, ints, bools, null
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += '\n';
  return out;
}

void write_payload(const std::string& out, const std::string& payload) {
  if (out.empty() || out == "-" || out == "stdout") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << payload;
}

}  // namespace elp::cli
