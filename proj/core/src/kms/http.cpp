#include "qkdn/kms/http.hpp"

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "qkdn/kms/wire.hpp"

namespace qkdn::kms {

namespace {

constexpr const char* kSaeHeader = "X-SAE-ID";
constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, const wire::ErrorBody& err) {
  res.status = wire::http_status(err.kind);
  res.set_content(wire::encode_error(err), kJson);
}

// Runs `fn`, mapping library exceptions onto ETSI error responses.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const wire::MalformedBody& e) {
    send_error(res, {wire::ErrorKind::kMalformed, e.what()});
  } catch (const std::exception& e) {
    send_error(res, wire::classify(e));
  }
}

std::string caller(const httplib::Request& req) {
  if (!req.has_header(kSaeHeader)) {
    throw wire::MalformedBody(std::string("missing ") + kSaeHeader + " header");
  }
  return req.get_header_value(kSaeHeader);
}

int int_param(const httplib::Request& req, const char* name, int fallback) {
  if (!req.has_param(name)) return fallback;
  const auto text = req.get_param_value(name);
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(name);
    return v;
  } catch (const std::logic_error&) {
    throw wire::MalformedBody(std::string("query parameter ") + name + " is not an integer");
  }
}

}  // namespace

struct KmsHttpServer::Impl {
  KeyManagementService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(KeyManagementService& s) : service(s) {
    server.Get(R"(/api/v1/keys/([^/]+)/enc_keys)", [this](const httplib::Request& req,
                                                         httplib::Response& res) {
      guarded(res, [&] {
        const std::string slave = req.matches[1];
        const int number = int_param(req, "number", 1);
        const int size = int_param(req, "size", kSupportedKeyBits);
        auto keys = service.get_enc_keys(caller(req), slave, number, size);
        res.set_content(wire::encode_key_container(keys), kJson);
      });
    });

    server.Post(R"(/api/v1/keys/([^/]+)/dec_keys)", [this](const httplib::Request& req,
                                                          httplib::Response& res) {
      guarded(res, [&] {
        const std::string master = req.matches[1];
        auto ids = wire::decode_key_ids(req.body);
        auto keys = service.get_dec_keys(caller(req), master, ids);
        res.set_content(wire::encode_key_container(keys), kJson);
      });
    });

    server.Post("/admin/v1/links", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        nlohmann::json body;
        try {
          body = nlohmann::json::parse(req.body);
          service.provision_link(body.at("sae_a").get<std::string>(),
                                 body.at("sae_b").get<std::string>(),
                                 body.at("count").get<std::size_t>());
        } catch (const nlohmann::json::exception& e) {
          throw wire::MalformedBody(e.what());
        } catch (const DuplicateLink& e) {
          res.status = 409;
          res.set_content(wire::encode_error({wire::ErrorKind::kMalformed, e.what()}), kJson);
          return;
        }
        res.status = 201;
      });
    });
  }

  ~Impl() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
};

KmsHttpServer::KmsHttpServer(KeyManagementService& service)
    : impl_(std::make_unique<Impl>(service)) {}

KmsHttpServer::~KmsHttpServer() = default;

int KmsHttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw TransportError("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void KmsHttpServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw TransportError("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void KmsHttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

struct HttpKmsClient::Impl {
  httplib::Client client;
  Impl(const std::string& host, int port) : client(host, port) { client.set_keep_alive(true); }

  std::string expect_ok(const httplib::Result& res, const std::string& what) {
    if (!res) throw TransportError(what + ": " + httplib::to_string(res.error()));
    if (res->status == 200 || res->status == 201) return res->body;
    wire::ErrorBody err;
    try {
      err = wire::decode_error(res->body);
    } catch (const wire::MalformedBody&) {
      throw TransportError(what + ": HTTP " + std::to_string(res->status));
    }
    if (res->status == 409) throw DuplicateLink(err.message);
    wire::rethrow(err);
  }
};

HttpKmsClient::HttpKmsClient(std::string host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}

HttpKmsClient::~HttpKmsClient() = default;

std::unique_ptr<HttpKmsClient> HttpKmsClient::from_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw InvalidArgument("expected host:port, got '" + address + "'");
  }
  int port = 0;
  try {
    port = std::stoi(address.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw InvalidArgument("invalid port in '" + address + "'");
  }
  return std::make_unique<HttpKmsClient>(address.substr(0, colon), port);
}

std::vector<QkdKey> HttpKmsClient::get_enc_keys(const SaeId& master, const SaeId& slave, int number,
                                                int size_bits) {
  httplib::Headers headers{{kSaeHeader, master}};
  auto path = "/api/v1/keys/" + httplib::detail::encode_url(slave) +
              "/enc_keys?number=" + std::to_string(number) + "&size=" + std::to_string(size_bits);
  auto body = impl_->expect_ok(impl_->client.Get(path, headers), "enc_keys");
  return wire::decode_key_container(body);
}

std::vector<QkdKey> HttpKmsClient::get_dec_keys(const SaeId& slave, const SaeId& master,
                                                std::span<const KeyId> key_ids) {
  httplib::Headers headers{{kSaeHeader, slave}};
  auto path = "/api/v1/keys/" + httplib::detail::encode_url(master) + "/dec_keys";
  auto request = wire::encode_key_ids({key_ids.begin(), key_ids.end()});
  auto body = impl_->expect_ok(impl_->client.Post(path, headers, request, kJson), "dec_keys");
  return wire::decode_key_container(body);
}

void HttpKmsClient::provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) {
  nlohmann::json body{{"sae_a", sae_a}, {"sae_b", sae_b}, {"count", count}};
  impl_->expect_ok(impl_->client.Post("/admin/v1/links", body.dump(), kJson), "provision");
}

}  // namespace qkdn::kms
