// service.hpp -- HTTP front end for SessionManager
//
//   POST /v1/sessions                 {"schema":1,"a":"rrr","b":"rrrr","n":2,"human":"I"}
//   GET  /v1/sessions/{id}
//   POST /v1/sessions/{id}/moves      {"schema":1,"structure":"B","position":2}
//   GET  /v1/sessions/{id}/hint       [?structure=A&position=3]
//
// Errors come back as {"schema":1,"error":"..."} with 400 (bad request or
// illegal move), 404 (unknown session) or 409 (finished / not your turn).

#pragma once

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "session.hpp"

namespace efo {

namespace detail {

inline void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& message) {
    nlohmann::ordered_json j;
    j["schema"] = kWireSchema;
    j["error"] = message;
    send_json(res, status, j);
}

inline nlohmann::json request_body(const httplib::Request& req) {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw std::invalid_argument("request body must be a JSON object");
    if (j.contains("schema") && j["schema"] != kWireSchema)
        throw std::invalid_argument("unsupported schema " + j["schema"].dump());
    return j;
}

inline Move move_from(const std::string& structure, long long position) {
    if (position < 1) throw std::invalid_argument("positions are 1-based");
    return Move{parse_side(structure), static_cast<std::size_t>(position - 1)};
}

template <class F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const SessionNotFound& e) {
        send_error(res, 404, e.what());
    } catch (const SessionConflict& e) {
        send_error(res, 409, e.what());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, std::string("malformed request: ") + e.what());
    } catch (const std::invalid_argument& e) {
        send_error(res, 400, e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, e.what());
    }
}

}  // namespace detail

/// Registers the session endpoints on `server`.
inline void mount_game_service(httplib::Server& server, SessionManager& sessions) {
    using detail::guarded;
    using detail::send_json;

    server.Post("/v1/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto body = detail::request_body(req);
            auto n = body.at("n").get<long long>();
            if (n < 0) throw std::invalid_argument("n must be non-negative");
            auto human = parse_player(body.value("human", std::string("I")));
            send_json(res, 201,
                      sessions.create(body.at("a").get<std::string>(), body.at("b").get<std::string>(),
                                      static_cast<unsigned>(n), human));
        });
    });

    server.Get(R"(/v1/sessions/([0-9a-f]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, sessions.get(req.matches[1])); });
    });

    server.Post(R"(/v1/sessions/([0-9a-f]+)/moves)",
                [&sessions](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        auto body = detail::request_body(req);
                        auto m = detail::move_from(body.at("structure").get<std::string>(),
                                                   body.at("position").get<long long>());
                        send_json(res, 200, sessions.move(req.matches[1], m));
                    });
                });

    server.Get(R"(/v1/sessions/([0-9a-f]+)/hint)", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            if (!req.has_param("structure") && !req.has_param("position")) {
                send_json(res, 200, sessions.hints(req.matches[1]));
                return;
            }
            auto m = detail::move_from(req.get_param_value("structure"), std::stoll(req.get_param_value("position")));
            send_json(res, 200, sessions.hint(req.matches[1], m));
        });
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) detail::send_error(res, res.status, "no such endpoint");
    });
}

}  // namespace efo
