// Copyright 2026 The FieldSense Authors
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

#include "fieldsense/synthetic.h"

#include <algorithm>
#include <cctype>

#include "fieldsense/random.h"

namespace fieldsense {
namespace {

using Pool = std::vector<std::string>;

const std::string& pick(Rng& rng, const Pool& pool) {
  return pool[rng.below(pool.size())];
}

std::string to_upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// "first_name" -> "firstName"
std::string camelize(std::string_view s) {
  std::string out;
  bool upper_next = false;
  for (char c : s) {
    if (c == '_' || c == '-') {
      upper_next = !out.empty();
      continue;
    }
    out += upper_next ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
    upper_next = false;
  }
  return out;
}

std::string decorate_label(Rng& rng, std::string label) {
  const double style = rng.unit();
  if (style < 0.15) {
    label = to_lower(std::move(label));
  } else if (style < 0.22) {
    label = to_upper(std::move(label));
  }
  const double suffix = rng.unit();
  if (suffix < 0.3) {
    label += ":";
  } else if (suffix < 0.4) {
    label += " *";
  }
  return label;
}

std::string decorate_name(Rng& rng, std::string name) {
  static const Pool kPrefixes = {"reg_", "billing_", "shipping_", "ctl00_",
                                 "form_", "acct_"};
  static const Pool kSuffixes = {"_1", "01", "__", "2"};
  if (rng.bernoulli(0.2)) name = pick(rng, kPrefixes) + name;
  if (rng.bernoulli(0.15)) name += pick(rng, kSuffixes);
  return name;
}

std::string opaque_id(Rng& rng) {
  static constexpr std::string_view kBase36 = "0123456789abcdefghijklmnopqrstuvwxyz";
  switch (rng.below(3)) {
    case 0: {
      std::string id = "u_0_";
      id += kBase36[rng.below(kBase36.size())];
      id += kBase36[rng.below(kBase36.size())];
      return id;
    }
    case 1: return "field" + std::to_string(rng.below(1000));
    default: return "input_" + std::to_string(rng.below(100));
  }
}

std::string make_id(Rng& rng, const ClassTemplate& t, const std::string& name) {
  const double r = rng.unit();
  if (r < 0.05) return {};
  if (r < 0.30) return opaque_id(rng);
  if (r < 0.60 || t.ids.empty()) {
    return rng.bernoulli(0.5) ? name : camelize(name);
  }
  return pick(rng, t.ids);
}

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) throw Error(std::string("profile: '") + key + "' must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(std::string("profile: '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ClassProfile ClassProfile::defaults() {
  ClassProfile p;
  p.classes = {
      {"email",
       {"Email", "Email address", "E-mail", "Email or phone",
        "Mobile number or email address", "Email or mobile phone number",
        "Your email", "Contact email", "Work email", "Correo electronico",
        "Adresse e-mail", "Where can we reach you?"},
       {"email", "reg_email__", "session_key", "emailAddress", "user_email",
        "mail", "login_email", "contact_email", "j_mail"},
       {"email", "ap_email", "login-email", "emailInput", "reg-email", "mail",
        "txtEmail"},
       {"email", "email", "text"}},
      {"password",
       {"Password", "New password", "Confirm password", "Re-enter password",
        "Create a password", "Passcode", "PIN", "Secret word"},
       {"password", "session_password", "reg_password__", "pass", "pwd",
        "passwd", "new_password", "confirm_password", "pin", "secret"},
       {"password", "pass", "pwd", "login-passwd", "newPassword", "pin"},
       {"password"}},
      {"first_name",
       {"First name", "Given name", "First", "Forename", "Name (first)",
        "Vorname", "Prenom"},
       {"firstname", "first_name", "fname", "givenName", "given-name", "first",
        "prenom"},
       {"firstName", "first_name", "fname", "givenname", "first"},
       {"text"}},
      {"last_name",
       {"Last name", "Surname", "Family name", "Last", "Nachname",
        "Nom de famille"},
       {"lastname", "last_name", "lname", "surname", "familyName",
        "family-name", "last", "nom"},
       {"lastName", "last_name", "lname", "surname", "last"},
       {"text"}},
      {"phone",
       {"Phone", "Phone number", "Mobile", "Mobile number", "Telephone", "Tel",
        "Cell phone", "Contact number", "Daytime number"},
       {"phone", "phone_number", "mobile", "tel", "telephone", "cell",
        "msisdn", "contact_no", "mobileNumber"},
       {"phone", "phoneNumber", "mobile", "tel", "telInput"},
       {"tel", "tel", "text"}},
      {"address",
       {"Address", "Street address", "Address line 1", "Street", "Address 1",
        "Mailing address", "Home address", "Street and number"},
       {"address", "address1", "street", "addr1", "address_line1",
        "streetAddress", "line1", "billing_address"},
       {"address", "address1", "street", "addressLine1", "addr"},
       {"text", "text", "textarea"}},
      {"username",
       {"Username", "User name", "User ID", "Login", "Screen name", "Nickname",
        "Account name", "Handle"},
       {"username", "user_name", "login", "userid", "user_id", "loginName",
        "nickname", "screen_name", "handle", "account"},
       {"username", "login-username", "userId", "login", "nick"},
       {"text"}},
      {"state",
       {"State", "State / Province", "Province", "Region", "County",
        "State/Province/Region"},
       {"state", "province", "region", "state_code", "county", "addr_state"},
       {"state", "province", "region", "stateSelect", "county"},
       {"select", "select", "text"}},
  };
  p.sites = {"https://www.amazon.in/ap/signin",
             "https://login.yahoo.com/",
             "https://www.linkedin.com/login",
             "https://www.facebook.com/",
             "https://shop.example.com/checkout/billing",
             "https://accounts.example.org/signup",
             "https://www.bank.example/profile/edit",
             "https://forms.example.net/contact-us",
             "https://store.example.co.uk/account/register",
             "https://travel.example.com/booking/passenger"};
  return p;
}

ClassProfile ClassProfile::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("profile is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("classes") || !j["classes"].is_array()) {
    throw Error("profile must be an object with a 'classes' array");
  }
  ClassProfile p;
  for (const auto& c : j["classes"]) {
    if (!c.is_object() || !c.contains("class") || !c["class"].is_string()) {
      throw Error("profile: every class needs a 'class' name");
    }
    ClassTemplate t;
    t.class_name = c["class"].get<std::string>();
    t.labels = string_list(c, "labels");
    t.names = string_list(c, "names");
    t.ids = string_list(c, "ids");
    t.types = string_list(c, "types");
    if (c.contains("weight")) {
      if (!c["weight"].is_number() || c["weight"].get<double>() <= 0) {
        throw Error("profile: weight must be a positive number");
      }
      t.weight = c["weight"].get<double>();
    }
    if (t.labels.empty() || t.names.empty()) {
      throw Error("profile: class '" + t.class_name + "' needs labels and names");
    }
    if (t.types.empty()) t.types = {"text"};
    p.classes.push_back(std::move(t));
  }
  p.sites = string_list(j, "sites");
  if (p.classes.empty()) throw Error("profile has no classes");
  if (p.sites.empty()) p.sites = defaults().sites;
  return p;
}

const ClassTemplate* ClassProfile::find(std::string_view class_name) const {
  for (const ClassTemplate& t : classes) {
    if (t.class_name == class_name) return &t;
  }
  return nullptr;
}

std::vector<DatasetRow> gen_synthetic(const ClassProfile& profile, std::size_t n,
                                      double noise, std::uint64_t seed) {
  if (profile.classes.empty()) throw Error("profile has no classes");
  double total_weight = 0;
  for (const ClassTemplate& t : profile.classes) total_weight += t.weight;

  Rng rng(seed);
  std::vector<DatasetRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double draw = rng.unit() * total_weight;
    std::size_t c = 0;
    while (c + 1 < profile.classes.size() && draw >= profile.classes[c].weight) {
      draw -= profile.classes[c].weight;
      ++c;
    }
    const ClassTemplate& t = profile.classes[c];

    DatasetRow row;
    row.target = t.class_name;
    FieldFeatures& f = row.features;
    f.label_text = rng.bernoulli(0.05) ? std::string() : decorate_label(rng, pick(rng, t.labels));
    f.name = decorate_name(rng, pick(rng, t.names));
    f.id = make_id(rng, t, f.name);
    f.control_type = t.types.empty() ? "text" : pick(rng, t.types);
    f.page_url = pick(rng, profile.sites);

    if (profile.classes.size() > 1 && rng.bernoulli(noise)) {
      std::size_t other = rng.below(profile.classes.size() - 1);
      if (other >= c) ++other;
      const ClassTemplate& decoy = profile.classes[other];
      switch (rng.below(3)) {
        case 0: f.label_text = pick(rng, decoy.labels); break;
        case 1: f.name = pick(rng, decoy.names); break;
        default: f.id = decoy.ids.empty() ? pick(rng, decoy.names) : pick(rng, decoy.ids); break;
      }
    }
    if (f.label_text.empty() && f.name.empty() && f.id.empty()) f.name = pick(rng, t.names);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fieldsense
