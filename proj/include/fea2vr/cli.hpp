// Copyright 2026 The fea2vr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// `fea2vr` subcommands. Exit codes: 0 success, 1 conversion or validation
// failure, 2 unreadable input / unwritable output. Errors are one line:
//   error: <kind>: <context>: <message>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fea2vr/element_model.hpp"
#include "fea2vr/error.hpp"
#include "fea2vr/geometry.hpp"
#include "fea2vr/io_formats.hpp"
#include "fea2vr/listing_parser.hpp"
#include "fea2vr/mesh_pipeline.hpp"
#include "fea2vr/serve.hpp"

namespace fea2vr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;

struct ConvertOptions {
  std::string nodes_path;
  std::string elements_path;
  std::optional<std::string> surface_path;
  std::vector<std::string> results;  // NAME=path or NAME:COLUMN=path
  std::vector<std::string> etypes;   // N=CLASS, applied over the defaults
  std::size_t value_column = 1;
  bool dedup_faces = false;
  bool drop_degenerate = false;
  bool allow_empty = false;
  bool fill_missing = false;
  std::string output_path;
  std::optional<std::string> obj_path;
  std::optional<std::string> report_path;
  std::optional<std::string> remapped_results_dir;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  return buffer.str();
}

/// Writes to a sibling temp file, then renames over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  }
}

inline int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Usage ? kExitIo : kExitFailure;
}

inline void report_error(std::ostream& err, const Error& e, const std::string& context = {}) {
  err << "error: " << to_string(e.kind()) << ": ";
  if (!context.empty()) {
    err << context;
    if (e.line() > 0) err << ':' << e.line();
    err << ": ";
  }
  err << e.what() << '\n';
}

/// Runs `parse` on the file's text, tagging parse errors with the path.
template <typename Parse>
auto parse_file(const std::string& path, Parse&& parse, std::ostream& err) {
  const std::string text = read_file(path);
  try {
    auto parsed = parse(text);
    constexpr std::size_t kMaxShown = 20;
    for (std::size_t i = 0; i < parsed.warnings.size() && i < kMaxShown; ++i) {
      err << "warning: " << path << ':' << parsed.warnings[i].line_number << ": "
          << parsed.warnings[i].reason << '\n';
    }
    if (parsed.warnings.size() > kMaxShown) {
      err << "warning: " << path << ": " << parsed.warnings.size() - kMaxShown
          << " more warning(s)\n";
    }
    return parsed;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    std::ostringstream where;
    where << path;
    if (e.line() > 0) where << ':' << e.line();
    throw Error(ErrorKind::Parse, where.str() + ": " + e.what());
  }
}

inline std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                            const char* what) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw Error(ErrorKind::Usage, std::string("bad ") + what + " '" + text + "'; expected NAME=PATH");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

inline void print_report(std::ostream& out, const ConversionReport& r) {
  out << "mode: " << (r.optimized ? "surface" : "full") << '\n'
      << "input nodes: " << r.input_nodes << '\n';
  if (r.optimized) {
    out << "surface nodes: " << r.surface_nodes << '\n'
        << "excluded nodes: " << r.excluded_nodes << '\n';
  }
  out << "elements: " << r.input_elements;
  for (const auto& [name, count] : r.elements_per_class) out << ' ' << name << '=' << count;
  out << " unsupported=" << r.unsupported_elements << '\n'
      << "dropped empty elements: " << r.dropped_empty_elements << '\n'
      << "emitted triangles: " << r.emitted_triangles << '\n';
  if (r.duplicate_face_triangles_removed > 0) {
    out << "duplicate-face triangles removed: " << r.duplicate_face_triangles_removed << '\n';
  }
  out << "degenerate triangles: " << r.degenerate_triangles;
  if (r.degenerate_triangles_removed > 0) out << " (removed " << r.degenerate_triangles_removed << ')';
  out << '\n'
      << "orphan vertices removed: " << r.orphan_vertices_removed << '\n'
      << "vertices: " << r.vertices << '\n'
      << "triangles: " << r.triangles << '\n';
}

inline io::VrMeshDocument load_document(const std::string& path, bool check_indices = true) {
  return io::parse_vrmesh(read_file(path), check_indices);
}

}  // namespace detail

inline int cmd_convert(const ConvertOptions& options, std::ostream& out, std::ostream& err) {
  try {
    TypeMapping mapping = TypeMapping::defaults();
    for (const auto& entry : options.etypes) {
      auto [type_ref, cls] = TypeMapping::parse_entry(entry);
      mapping.set(type_ref, cls);
    }
    struct ResultFile {
      std::string name, path;
      std::size_t column;
    };
    std::vector<ResultFile> result_files;
    for (const auto& entry : options.results) {
      auto [name, path] = detail::split_assignment(entry, "--results");
      std::size_t column = options.value_column;
      if (auto colon = name.rfind(':'); colon != std::string::npos) {
        auto parsed = fea2vr::detail::parse_integer(std::string_view(name).substr(colon + 1));
        if (!parsed || *parsed < 1 || colon == 0) {
          throw Error(ErrorKind::Usage, "bad --results '" + entry + "'; expected NAME[:COLUMN]=PATH");
        }
        column = static_cast<std::size_t>(*parsed);
        name.resize(colon);
      }
      result_files.push_back({name, path, column});
    }

    auto nodes = detail::parse_file(options.nodes_path, listing::parse_node_list, err);
    const auto counts = mapping.expected_node_counts();
    auto elements = detail::parse_file(
        options.elements_path,
        [&](std::string_view text) { return listing::parse_element_list(text, counts); }, err);
    std::optional<std::set<NodeId>> surface;
    if (options.surface_path) {
      surface = detail::parse_file(*options.surface_path, listing::parse_surface_node_list, err)
                    .records;
    }
    std::vector<std::pair<std::string, std::map<NodeId, double>>> raw_fields;
    for (const auto& file : result_files) {
      auto parsed = detail::parse_file(
          file.path,
          [&](std::string_view text) { return listing::parse_result_list(text, file.column); },
          err);
      raw_fields.emplace_back(file.name, std::move(parsed.records));
    }

    PipelineOptions pipeline;
    pipeline.dedup_faces = options.dedup_faces;
    pipeline.drop_degenerate = options.drop_degenerate;
    pipeline.allow_empty = options.allow_empty;
    auto conversion = build_mesh(nodes.records, elements.records, mapping, surface, pipeline);
    const auto policy =
        options.fill_missing ? MissingValuePolicy::Fill : MissingValuePolicy::Error;
    for (const auto& [name, raw] : raw_fields) {
      add_field(conversion.mesh, remap_field(name, raw, conversion.mesh.node_id_map, policy));
    }

    // Everything is rendered before anything is written.
    std::vector<std::pair<std::filesystem::path, std::string>> outputs;
    outputs.emplace_back(options.output_path,
                         io::to_vrmesh_string(conversion.mesh, conversion.report));
    if (options.obj_path) outputs.emplace_back(*options.obj_path, io::to_obj_string(conversion.mesh));
    if (options.report_path) {
      outputs.emplace_back(*options.report_path, io::report_to_json(conversion.report).dump(2) + '\n');
    }
    if (options.remapped_results_dir) {
      std::filesystem::create_directories(*options.remapped_results_dir);
      const auto& mesh = conversion.mesh;
      for (const auto& field : mesh.fields) {
        std::map<NodeId, double> kept;
        for (std::size_t v = 0; v < mesh.node_id_map.size(); ++v) {
          if (!std::isnan(field.values[v])) kept[mesh.node_id_map[v]] = field.values[v];
        }
        outputs.emplace_back(std::filesystem::path(*options.remapped_results_dir) / (field.name + ".txt"),
                             listing::format_result_list(kept, field.name));
      }
    }
    for (const auto& [path, content] : outputs) detail::write_file_atomic(path, content);

    detail::print_report(out, conversion.report);
    for (const auto& field : conversion.mesh.fields) {
      out << "field " << field.name << ": min=" << field.min << " max=" << field.max << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    detail::report_error(err, e);
    return detail::exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << '\n';
    return kExitIo;
  }
}

inline int cmd_inspect(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    auto doc = detail::load_document(path);
    for (const auto& w : doc.warnings) err << "warning: " << path << ": " << w << '\n';
    const auto s = stats(doc.mesh);
    out << "vertices: " << s.vertex_count << '\n' << "triangles: " << s.triangle_count << '\n';
    if (s.bounding_box) {
      const auto& [lo, hi] = *s.bounding_box;
      out << "bbox: (" << lo[0] << ", " << lo[1] << ", " << lo[2] << ") - (" << hi[0] << ", "
          << hi[1] << ", " << hi[2] << ")\n";
    }
    for (const auto& f : s.fields) {
      out << "field " << f.name << ": min=" << f.min << " max=" << f.max << " mean=" << f.mean;
      if (f.missing > 0) out << " missing=" << f.missing;
      out << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    detail::report_error(err, e, path);
    return kExitIo;
  }
}

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  io::VrMeshDocument doc;
  try {
    doc = detail::load_document(path, /*check_indices=*/false);
  } catch (const Error& e) {
    detail::report_error(err, e, path);
    return kExitIo;
  }
  const auto issues = validate(doc.mesh);
  for (const auto& issue : issues) out << "issue: " << describe(issue) << '\n';
  if (!issues.empty()) return kExitFailure;
  out << "ok\n";
  return kExitOk;
}

inline int cmd_serve(const std::string& path, const std::string& host, int port,
                     const std::optional<std::string>& assets, std::ostream& out,
                     std::ostream& err) {
  std::optional<serve::ModelServer> server;
  try {
    std::string text = detail::read_file(path);
    io::parse_vrmesh(text);
    std::optional<std::filesystem::path> asset_dir;
    if (assets) asset_dir = *assets;
    server.emplace(std::move(text), asset_dir);
  } catch (const Error& e) {
    detail::report_error(err, e, path);
    return kExitIo;
  }
  const int bound = server->bind(host, port);
  if (bound < 0) {
    err << "error: io: cannot listen on " << host << ':' << port << '\n';
    return kExitIo;
  }
  out << "serving " << path << " on http://" << host << ':' << bound << '\n' << std::flush;
  return server->listen() ? kExitOk : kExitIo;
}

/// Parses argv and dispatches to a subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convert FE solver listings into viewer-ready triangle meshes", "fea2vr"};
  app.require_subcommand(1);

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert node/element/result listings");
  convert_cmd->add_option("--nodes", convert.nodes_path, "Node listing")->required();
  convert_cmd->add_option("--elements", convert.elements_path, "Element listing")->required();
  convert_cmd->add_option("--surface-nodes", convert.surface_path,
                          "Surface node listing; enables surface extraction");
  convert_cmd->add_option("--results", convert.results,
                          "NAME[:COLUMN]=PATH result listing (repeatable); COLUMN overrides --value-column");
  convert_cmd->add_option("--etype", convert.etypes,
                          "TYP=CLASS with CLASS in shell|hex8|solid92|unsupported (repeatable)");
  convert_cmd->add_option("--value-column", convert.value_column, "Result column to read (1-based)")
      ->check(CLI::PositiveNumber);
  convert_cmd->add_flag("--dedup-faces", convert.dedup_faces,
                        "Drop faces whose node set occurs more than once");
  convert_cmd->add_flag("--drop-degenerate", convert.drop_degenerate, "Drop zero-area triangles");
  convert_cmd->add_flag("--allow-empty", convert.allow_empty, "Accept an empty element list");
  convert_cmd->add_flag("--fill-missing", convert.fill_missing,
                        "Write null for vertices without a result value");
  convert_cmd->add_option("-o,--output", convert.output_path, "Output .vrmesh.json")->required();
  convert_cmd->add_option("--obj", convert.obj_path, "Also write an OBJ file");
  convert_cmd->add_option("--report", convert.report_path, "Also write the report as JSON");
  convert_cmd->add_option("--emit-remapped-results", convert.remapped_results_dir,
                          "Write each field as a per-node listing into DIR");

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print mesh statistics");
  inspect_cmd->add_option("file", inspect_path, "vrmesh document")->required();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a mesh for defects");
  validate_cmd->add_option("file", validate_path, "vrmesh document")->required();

  std::string serve_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> assets;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a mesh to the browser viewer");
  serve_cmd->add_option("file", serve_path, "vrmesh document")->required();
  serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Interface to bind");
  serve_cmd->add_option("--assets", assets, "Directory with viewer assets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*convert_cmd) return cmd_convert(convert, out, err);
  if (*inspect_cmd) return cmd_inspect(inspect_path, out, err);
  if (*validate_cmd) return cmd_validate(validate_path, out, err);
  return cmd_serve(serve_path, host, port, assets, out, err);
}

}  // namespace fea2vr::cli
