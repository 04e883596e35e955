/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <httplib.h>

#include "biod/server.hpp"

#include "biod/error.hpp"

namespace biod {

struct HttpServer::Impl {
  std::shared_ptr<const Service> service;
  httplib::Server server;
  bool bound = false;
};

namespace {

void reply(httplib::Response& res, const Response& out) {
  res.status = out.status;
  res.set_content(out.body, out.content_type);
}

} // namespace

HttpServer::HttpServer(std::shared_ptr<const Service> service) : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  Impl* impl = impl_.get();

  impl->server.Get(".*", [impl](const httplib::Request& req, httplib::Response& res) {
    Request request;
    request.method = req.method;
    std::string_view target = req.target;
    auto q = target.find('?');
    request.path = std::string(target.substr(0, q));
    if (q != std::string_view::npos) request.query = std::string(target.substr(q + 1));
    reply(res, impl->service->handle(request));
  });

  // Anything that no handler produced a body for (other methods, 414s)
  // still gets the JSON error envelope.
  impl->server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    ErrorCode code = res.status == 404 || res.status == 405 ? ErrorCode::NOT_FOUND
                     : res.status == 414                    ? ErrorCode::REQUEST_TOO_LARGE
                                                            : ErrorCode::BAD_QUERY_STRING;
    int status = res.status;
    reply(res, error_response(Error(code, "request rejected with HTTP status " +
                                              std::to_string(status))));
    res.status = status;
  });

  impl->server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        reply(res, error_response(Error(ErrorCode::INTERNAL, "unhandled exception")));
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::IO_ERROR, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound;
}

void HttpServer::run() {
  if (!impl_->bound) throw Error(ErrorCode::INTERNAL, "server is not bound");
  impl_->server.listen_after_bind();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

} // namespace biod
