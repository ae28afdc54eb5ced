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

// Read-only HTTP front for one vrmesh document:
//   GET /health      -> "ok"
//   GET /api/model   -> the document as loaded
//   GET /api/report  -> its provenance object ({} when absent)
//   GET /...         -> static viewer assets, when an asset directory is given

#include <filesystem>
#include <optional>
#include <string>

#include <httplib.h>

#include "fea2vr/io_formats.hpp"

namespace fea2vr::serve {

inline constexpr const char* kFallbackIndex = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>fea2vr</title></head>
<body>
<h1>fea2vr</h1>
<p>No viewer assets are being served. Start the server with <code>--assets DIR</code>
to serve a viewer build.</p>
<ul>
<li><a href="/api/model">/api/model</a> &mdash; mesh document</li>
<li><a href="/api/report">/api/report</a> &mdash; conversion report</li>
<li><a href="/health">/health</a></li>
</ul>
</body></html>
)";

class ModelServer {
 public:
  /// `document` must already have passed `io::parse_vrmesh`.
  explicit ModelServer(std::string document,
                       std::optional<std::filesystem::path> assets = std::nullopt)
      : document_(std::move(document)) {
    auto parsed = io::Json::parse(document_);
    report_ = parsed.contains("provenance") ? parsed["provenance"].dump() : "{}";

    // SO_REUSEADDR only: without SO_REUSEPORT a busy port fails to bind.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    if (assets && !server_.set_mount_point("/", assets->string())) {
      throw Error(ErrorKind::Io, "cannot serve assets from '" + assets->string() + "'");
    }
    const bool has_index = assets && std::filesystem::exists(*assets / "index.html");

    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });
    server_.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(document_, "application/json");
    });
    server_.Get("/api/report", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(report_, "application/json");
    });
    if (!has_index) {
      server_.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kFallbackIndex, "text/html");
      });
    }
  }

  ModelServer(const ModelServer&) = delete;
  ModelServer& operator=(const ModelServer&) = delete;

  /// Returns the bound port, or -1. Port 0 picks a free port.
  int bind(const std::string& host, int port) {
    if (port == 0) return server_.bind_to_any_port(host);
    return server_.bind_to_port(host, port) ? port : -1;
  }

  /// Blocks until `stop()`.
  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  std::string document_;
  std::string report_;
  httplib::Server server_;
};

}  // namespace fea2vr::serve
