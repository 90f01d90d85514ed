// Copyright 2026 The ConceptForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include "conceptforge/review.hpp"

namespace conceptforge {

namespace {

void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  if (!r.body.empty()) res.set_content(r.body, "application/json; charset=utf-8");
}

constexpr const char* kPlaceholderPage =
    "<!doctype html><title>ConceptForge review</title>"
    "<p>Review UI bundle not installed. The JSON API is under /api/.</p>";

}  // namespace

void install_review_routes(httplib::Server& server, ReviewStore& store,
                           const std::string& static_dir) {
  server.Get("/api/tasks/next", [&store](const httplib::Request& req, httplib::Response& res) {
    send(res, store.next_task(req.get_param_value("annotator")));
  });
  server.Post("/api/judgments", [&store](const httplib::Request& req, httplib::Response& res) {
    send(res, store.submit(req.body));
  });
  server.Get("/api/concepts", [&store](const httplib::Request& req, httplib::Response& res) {
    send(res, store.concepts(req.get_param_value("q")));
  });
  server.Get("/api/metrics", [&store](const httplib::Request&, httplib::Response& res) {
    send(res, store.metrics());
  });
  server.Get("/api/status", [&store](const httplib::Request&, httplib::Response& res) {
    send(res, store.status());
  });
  if (static_dir.empty() || !server.set_mount_point("/", static_dir)) {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }
}

bool run_review_server(ReviewStore& store, const std::string& host, int port,
                       const std::string& static_dir) {
  httplib::Server server;
  install_review_routes(server, store, static_dir);
  return server.listen(host, port);
}

}  // namespace conceptforge
