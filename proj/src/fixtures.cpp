/*
 * Copyright (C) 2026 The iccsmell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iccsmell/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iccsmell/app_model.hpp"
#include "iccsmell/detectors.hpp"

namespace iccsmell::fixtures {

namespace fs = std::filesystem;

namespace {

// Manifest shared by fixtures that exercise source-side smells. Keeps the
// application task affinity empty so no incidental SM12 findings appear.
std::string plain_manifest(const std::string& package,
                           const std::string& activity) {
  return "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
         "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
         "    package=\"" + package + "\">\n"
         "  <application android:taskAffinity=\"\">\n"
         "    <activity android:name=\"." + activity + "\"/>\n"
         "  </application>\n"
         "</manifest>\n";
}

std::string expected(std::initializer_list<const char*> rows) {
  std::string out = "{\n  \"findings\": [";
  bool first = true;
  for (const char* row : rows) {
    out += first ? "\n    " : ",\n    ";
    out += row;
    first = false;
  }
  out += rows.size() == 0 ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::vector<Fixture> build_corpus() {
  std::vector<Fixture> all;

  // ---- SM01 ----------------------------------------------------------------

  all.push_back({"sm01_grant_no_revoke", {
    {"AndroidManifest.xml", plain_manifest("fix.sm01.grant", "Share")},
    {"src/Share.java",
R"__(package fix.sm01.grant;

import android.app.Activity;
import android.net.Uri;

public class Share extends Activity {
    public void shareDocument(Uri uri) {
        grantUriPermission("com.example.viewer", uri, 1);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM01", "file": "src/Share.java", "line": 8, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm01_grant_with_revoke", {
    {"AndroidManifest.xml", plain_manifest("fix.sm01.revoke", "Share")},
    {"src/Share.java",
R"__(package fix.sm01.revoke;

import android.app.Activity;
import android.net.Uri;

public class Share extends Activity {
    public void shareDocument(Uri uri) {
        grantUriPermission("com.example.viewer", uri, 1);
    }
}
)__"},
    {"src/Cleanup.java",
R"__(package fix.sm01.revoke;

import android.app.Activity;
import android.net.Uri;

public class Cleanup extends Activity {
    public void stopSharing(Uri uri) {
        revokeUriPermission(uri, 1);
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM02 ----------------------------------------------------------------

  all.push_back({"sm02_manifest_scheme", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm02.scheme">
  <application android:taskAffinity="">
    <activity android:name=".Viewer">
      <intent-filter>
        <action android:name="android.intent.action.VIEW"/>
        <data android:scheme="myapp"/>
      </intent-filter>
    </activity>
  </application>
</manifest>
)__"},
    {"src/Viewer.java",
R"__(package fix.sm02.scheme;

import android.app.Activity;

public class Viewer extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM02", "file": "AndroidManifest.xml", "line": 6, "column": 7, "confidence": "high"})"})},
  }});

  all.push_back({"sm02_standard_scheme", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm02.web">
  <application android:taskAffinity="">
    <activity android:name=".Viewer">
      <intent-filter>
        <action android:name="android.intent.action.VIEW"/>
        <data android:scheme="https"/>
      </intent-filter>
    </activity>
  </application>
</manifest>
)__"},
    {"src/Viewer.java",
R"__(package fix.sm02.web;

import android.app.Activity;

public class Viewer extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM02", "file": "AndroidManifest.xml", "line": 6, "column": 7, "confidence": "low"})"})},
  }});

  all.push_back({"sm02_code_scheme", {
    {"AndroidManifest.xml", plain_manifest("fix.sm02.code", "Register")},
    {"src/Register.java",
R"__(package fix.sm02.code;

import android.app.Activity;
import android.content.IntentFilter;

public class Register extends Activity {
    public IntentFilter buildFilter() {
        IntentFilter filter = new IntentFilter();
        filter.addDataScheme("mychannel");
        return filter;
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM02", "file": "src/Register.java", "line": 9, "column": 16, "confidence": "high"})"})},
  }});

  all.push_back({"sm02_benign", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm02.plain">
  <application android:taskAffinity="">
    <activity android:name=".Viewer">
      <intent-filter>
        <action android:name="android.intent.action.MAIN"/>
        <category android:name="android.intent.category.LAUNCHER"/>
      </intent-filter>
    </activity>
  </application>
</manifest>
)__"},
    {"src/Viewer.java",
R"__(package fix.sm02.plain;

import android.app.Activity;

public class Viewer extends Activity {
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM03 ----------------------------------------------------------------

  all.push_back({"sm03_missing_level", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm03.nolevel">
  <permission android:name="fix.sm03.nolevel.ACCESS"/>
  <application android:taskAffinity="">
    <activity android:name=".Main"/>
  </application>
</manifest>
)__"},
    {"src/Main.java",
R"__(package fix.sm03.nolevel;

import android.app.Activity;

public class Main extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM03", "file": "AndroidManifest.xml", "line": 4, "column": 3, "confidence": "high"})"})},
  }});

  all.push_back({"sm03_with_level", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm03.leveled">
  <permission android:name="fix.sm03.leveled.ACCESS" android:protectionLevel="signature"/>
  <application android:taskAffinity="">
    <activity android:name=".Main"/>
  </application>
</manifest>
)__"},
    {"src/Main.java",
R"__(package fix.sm03.leveled;

import android.app.Activity;

public class Main extends Activity {
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM04 ----------------------------------------------------------------

  all.push_back({"sm04_implicit_broadcast", {
    {"AndroidManifest.xml", plain_manifest("fix.sm04.implicitsend", "Publisher")},
    {"src/Publisher.java",
R"__(package fix.sm04.implicitsend;

import android.app.Activity;
import android.content.Intent;

public class Publisher extends Activity {
    public void publish() {
        sendBroadcast(new Intent("fix.sm04.EVENT"));
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM04", "file": "src/Publisher.java", "line": 8, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm04_unknown_intent", {
    {"AndroidManifest.xml", plain_manifest("fix.sm04.unknownsend", "Relay")},
    {"src/Relay.java",
R"__(package fix.sm04.unknownsend;

import android.app.Activity;
import android.content.Intent;

public class Relay extends Activity {
    public void relay(Intent received) {
        startActivity(received);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM04", "file": "src/Relay.java", "line": 8, "column": 9, "confidence": "low"})"})},
  }});

  all.push_back({"sm04_benign", {
    {"AndroidManifest.xml", plain_manifest("fix.sm04.safe", "Sender")},
    {"src/Sender.java",
R"__(package fix.sm04.safe;

import android.app.Activity;
import android.content.Intent;

public class Sender extends Activity {
    static final String EVENT_PERMISSION = "fix.sm04.safe.RECEIVE";

    public void open() {
        startActivity(new Intent(this, Sender.class));
    }

    public void notifyListeners() {
        sendBroadcast(new Intent("fix.sm04.EVENT"), EVENT_PERMISSION);
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM05 ----------------------------------------------------------------

  all.push_back({"sm05_sticky_call", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm05.sticky">
  <uses-permission android:name="android.permission.BROADCAST_STICKY"/>
  <application android:taskAffinity="">
    <activity android:name=".Beacon"/>
  </application>
</manifest>
)__"},
    {"src/Beacon.java",
R"__(package fix.sm05.sticky;

import android.app.Activity;
import android.content.Intent;

public class Beacon extends Activity {
    public void announce() {
        sendStickyBroadcast(new Intent("fix.sm05.STATE"));
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM05", "file": "src/Beacon.java", "line": 8, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm05_permission_only", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm05.vestigial">
  <uses-permission android:name="android.permission.BROADCAST_STICKY"/>
  <application android:taskAffinity="">
    <activity android:name=".Quiet"/>
  </application>
</manifest>
)__"},
    {"src/Quiet.java",
R"__(package fix.sm05.vestigial;

import android.app.Activity;

public class Quiet extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM05", "file": "AndroidManifest.xml", "line": 4, "column": 3, "confidence": "low"})"})},
  }});

  all.push_back({"sm05_benign", {
    {"AndroidManifest.xml", plain_manifest("fix.sm05.calm", "Calm")},
    {"src/Calm.java",
R"__(package fix.sm05.calm;

import android.app.Activity;

public class Calm extends Activity {
    public int tally(int count) {
        return count + 1;
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM06 ----------------------------------------------------------------

  all.push_back({"sm06_return_false", {
    {"AndroidManifest.xml", plain_manifest("fix.sm06.returnfalse", "Shell")},
    {"src/OpenClient.java",
R"__(package fix.sm06.returnfalse;

import android.webkit.WebView;
import android.webkit.WebViewClient;

public class OpenClient extends WebViewClient {
    @Override
    public boolean shouldOverrideUrlLoading(WebView view, String url) {
        return false;
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM06", "file": "src/OpenClient.java", "line": 8, "column": 20, "confidence": "high"})"})},
  }});

  all.push_back({"sm06_intercept_null", {
    {"AndroidManifest.xml", plain_manifest("fix.sm06.interceptnull", "Shell")},
    {"src/NullIntercept.java",
R"__(package fix.sm06.interceptnull;

import android.webkit.WebResourceRequest;
import android.webkit.WebResourceResponse;
import android.webkit.WebView;
import android.webkit.WebViewClient;

public class NullIntercept extends WebViewClient {
    @Override
    public WebResourceResponse shouldInterceptRequest(WebView view, WebResourceRequest request) {
        return null;
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM06", "file": "src/NullIntercept.java", "line": 10, "column": 32, "confidence": "high"})"})},
  }});

  all.push_back({"sm06_default_client", {
    {"AndroidManifest.xml", plain_manifest("fix.sm06.defaultclient", "Browser")},
    {"src/Browser.java",
R"__(package fix.sm06.defaultclient;

import android.app.Activity;
import android.webkit.WebView;
import android.webkit.WebViewClient;

public class Browser extends Activity {
    public void setup(WebView view) {
        view.setWebViewClient(new WebViewClient());
        view.loadUrl("https://example.org/");
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM06", "file": "src/Browser.java", "line": 9, "column": 14, "confidence": "medium"})"})},
  }});

  all.push_back({"sm06_allowlist", {
    {"AndroidManifest.xml", plain_manifest("fix.sm06.allowlist", "Shell")},
    {"src/StrictClient.java",
R"__(package fix.sm06.allowlist;

import android.webkit.WebView;
import android.webkit.WebViewClient;

public class StrictClient extends WebViewClient {
    @Override
    public boolean shouldOverrideUrlLoading(WebView view, String url) {
        if (url.startsWith("https://trusted.example.org/")) {
            return false;
        }
        return true;
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM07 ----------------------------------------------------------------

  all.push_back({"sm07_self_check", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm07.selfcheck">
  <application android:taskAffinity="">
    <activity android:name=".Launcher"/>
    <service android:name=".Worker"/>
  </application>
</manifest>
)__"},
    {"src/Launcher.java",
R"__(package fix.sm07.selfcheck;

import android.app.Activity;
import android.content.Intent;

public class Launcher extends Activity {
    public void begin() {
        startService(new Intent(this, Worker.class));
    }
}
)__"},
    {"src/Worker.java",
R"__(package fix.sm07.selfcheck;

import android.app.Service;
import android.content.Intent;
import android.os.IBinder;

public class Worker extends Service {
    public int onStartCommand(Intent intent, int flags, int startId) {
        int state = checkCallingOrSelfPermission("fix.sm07.selfcheck.USE");
        return state;
    }

    public IBinder onBind(Intent intent) {
        return null;
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM07", "file": "src/Worker.java", "line": 9, "column": 21, "confidence": "high"})"})},
  }});

  all.push_back({"sm07_binder_uid", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm07.binderuid">
  <application android:taskAffinity="">
    <service android:name=".Gatekeeper"/>
  </application>
</manifest>
)__"},
    {"src/Gatekeeper.java",
R"__(package fix.sm07.binderuid;

import android.app.Service;
import android.content.Intent;
import android.os.Binder;
import android.os.IBinder;

public class Gatekeeper extends Service {
    public void authorize() {
        int uid = Binder.getCallingUid();
        checkPermission("fix.sm07.binderuid.USE", 0, uid);
    }

    public IBinder onBind(Intent intent) {
        return null;
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM07", "file": "src/Gatekeeper.java", "line": 11, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm07_benign", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm07.safe">
  <application android:taskAffinity="">
    <service android:name=".Verifier"/>
  </application>
</manifest>
)__"},
    {"src/Verifier.java",
R"__(package fix.sm07.safe;

import android.app.Service;
import android.content.Intent;
import android.os.IBinder;

public class Verifier extends Service {
    public boolean allowed() {
        return checkCallingPermission("fix.sm07.safe.USE") == 0;
    }

    public IBinder onBind(Intent intent) {
        return null;
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM08 ----------------------------------------------------------------

  all.push_back({"sm08_urimatcher", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm08.matcher">
  <application android:taskAffinity="">
    <provider android:name=".DocsProvider" android:authorities="fix.sm08.docs">
      <path-permission android:pathPrefix="/secret" android:readPermission="fix.sm08.READ"/>
    </provider>
  </application>
</manifest>
)__"},
    {"src/Router.java",
R"__(package fix.sm08.matcher;

import android.content.UriMatcher;
import android.net.Uri;

public class Router {
    static final UriMatcher MATCHER = new UriMatcher(UriMatcher.NO_MATCH);

    public int route(Uri uri) {
        return MATCHER.match(uri);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM09", "file": "AndroidManifest.xml", "line": 6, "column": 7, "confidence": "medium"})",
      R"({"smell": "SM08", "file": "src/Router.java", "line": 10, "column": 24, "confidence": "high"})"})},
  }});

  all.push_back({"sm08_benign", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm08.plain">
  <application android:taskAffinity="">
    <provider android:name=".DocsProvider" android:authorities="fix.sm08.plain.docs"/>
  </application>
</manifest>
)__"},
    {"src/Router.java",
R"__(package fix.sm08.plain;

import android.content.UriMatcher;
import android.net.Uri;

public class Router {
    static final UriMatcher MATCHER = new UriMatcher(UriMatcher.NO_MATCH);

    public int route(Uri uri) {
        return MATCHER.match(uri);
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM09 ----------------------------------------------------------------

  all.push_back({"sm09_provider_permission", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm09.precedence">
  <application android:taskAffinity="">
    <provider android:name=".VaultProvider" android:authorities="fix.sm09.vault" android:permission="fix.sm09.USE_VAULT">
      <path-permission android:path="/vault/secret" android:readPermission="fix.sm09.READ_SECRET"/>
    </provider>
  </application>
</manifest>
)__"},
    {"src/VaultProvider.java",
R"__(package fix.sm09.precedence;

public class VaultProvider {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM09", "file": "AndroidManifest.xml", "line": 6, "column": 7, "confidence": "high"})"})},
  }});

  all.push_back({"sm09_path_only", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm09.pathonly">
  <application android:taskAffinity="">
    <provider android:name=".VaultProvider" android:authorities="fix.sm09.pathonly.vault">
      <path-permission android:path="/vault/secret" android:readPermission="fix.sm09.READ_SECRET"/>
    </provider>
  </application>
</manifest>
)__"},
    {"src/VaultProvider.java",
R"__(package fix.sm09.pathonly;

public class VaultProvider {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM09", "file": "AndroidManifest.xml", "line": 6, "column": 7, "confidence": "medium"})"})},
  }});

  all.push_back({"sm09_benign", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm09.guarded">
  <application android:taskAffinity="">
    <provider android:name=".VaultProvider" android:authorities="fix.sm09.guarded.vault" android:readPermission="fix.sm09.READ"/>
  </application>
</manifest>
)__"},
    {"src/VaultProvider.java",
R"__(package fix.sm09.guarded;

public class VaultProvider {
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM10 ----------------------------------------------------------------

  all.push_back({"sm10_two_args", {
    {"AndroidManifest.xml", plain_manifest("fix.sm10.unprotected", "Listener")},
    {"src/Listener.java",
R"__(package fix.sm10.unprotected;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.IntentFilter;

public class Listener extends Activity {
    public void listen(BroadcastReceiver receiver) {
        IntentFilter filter = new IntentFilter("fix.sm10.PING");
        registerReceiver(receiver, filter);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM10", "file": "src/Listener.java", "line": 10, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm10_null_permission", {
    {"AndroidManifest.xml", plain_manifest("fix.sm10.nullperm", "Listener")},
    {"src/Listener.java",
R"__(package fix.sm10.nullperm;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.IntentFilter;
import android.os.Handler;

public class Listener extends Activity {
    public void listen(BroadcastReceiver receiver, Handler handler) {
        IntentFilter filter = new IntentFilter("fix.sm10.PING");
        registerReceiver(receiver, filter, null, handler);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM10", "file": "src/Listener.java", "line": 11, "column": 9, "confidence": "high"})"})},
  }});

  all.push_back({"sm10_benign", {
    {"AndroidManifest.xml", plain_manifest("fix.sm10.guarded", "Listener")},
    {"src/Listener.java",
R"__(package fix.sm10.guarded;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.Context;
import android.content.IntentFilter;
import android.os.Handler;
import androidx.localbroadcastmanager.content.LocalBroadcastManager;

public class Listener extends Activity {
    static final String SEND_PERMISSION = "fix.sm10.guarded.SEND";

    public void listen(BroadcastReceiver receiver, Handler handler) {
        IntentFilter filter = new IntentFilter("fix.sm10.PING");
        registerReceiver(receiver, filter, SEND_PERMISSION, handler);
    }

    public void listenLocally(Context context, BroadcastReceiver receiver) {
        IntentFilter filter = new IntentFilter("fix.sm10.LOCAL");
        LocalBroadcastManager.getInstance(context).registerReceiver(receiver, filter);
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM11 ----------------------------------------------------------------

  all.push_back({"sm11_implicit_pending", {
    {"AndroidManifest.xml", plain_manifest("fix.sm11.implicitwrap", "Scheduler")},
    {"src/Scheduler.java",
R"__(package fix.sm11.implicitwrap;

import android.app.Activity;
import android.app.PendingIntent;
import android.content.Intent;

public class Scheduler extends Activity {
    public PendingIntent prepare() {
        return PendingIntent.getBroadcast(this, 0, new Intent("fix.sm11.ALARM"), 0);
    }
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM11", "file": "src/Scheduler.java", "line": 9, "column": 30, "confidence": "high"})"})},
  }});

  all.push_back({"sm11_benign", {
    {"AndroidManifest.xml", plain_manifest("fix.sm11.explicitwrap", "Scheduler")},
    {"src/Scheduler.java",
R"__(package fix.sm11.explicitwrap;

import android.app.Activity;
import android.app.PendingIntent;
import android.content.Intent;

public class Scheduler extends Activity {
    public PendingIntent prepare() {
        Intent target = new Intent(this, Scheduler.class);
        return PendingIntent.getActivity(this, 0, target, 0);
    }

    public PendingIntent prepareBatch(Intent[] targets) {
        return PendingIntent.getActivities(this, 0, targets, 0);
    }
}
)__"},
    {"expected.json", expected({})},
  }});

  // ---- SM12 ----------------------------------------------------------------

  all.push_back({"sm12_default_affinity", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm12.defaultaffinity">
  <application>
    <activity android:name=".Main"/>
  </application>
</manifest>
)__"},
    {"src/Main.java",
R"__(package fix.sm12.defaultaffinity;

import android.app.Activity;

public class Main extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM12", "file": "AndroidManifest.xml", "line": 5, "column": 5, "confidence": "medium"})"})},
  }});

  all.push_back({"sm12_app_affinity", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm12.appaffinity">
  <application android:taskAffinity="fix.sm12.shared">
    <activity android:name=".Main"/>
  </application>
</manifest>
)__"},
    {"src/Main.java",
R"__(package fix.sm12.appaffinity;

import android.app.Activity;

public class Main extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM12", "file": "AndroidManifest.xml", "line": 4, "column": 3, "confidence": "medium"})"})},
  }});

  all.push_back({"sm12_mixed", {
    {"AndroidManifest.xml",
R"__(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="fix.sm12.mixed">
  <application>
    <activity android:name=".Safe" android:taskAffinity=""/>
    <activity android:name=".Exposed"/>
  </application>
</manifest>
)__"},
    {"src/Safe.java",
R"__(package fix.sm12.mixed;

import android.app.Activity;

public class Safe extends Activity {
}
)__"},
    {"expected.json", expected({
      R"({"smell": "SM12", "file": "AndroidManifest.xml", "line": 6, "column": 5, "confidence": "medium"})"})},
  }});

  all.push_back({"sm12_benign", {
    {"AndroidManifest.xml", plain_manifest("fix.sm12.empty", "Main")},
    {"src/Main.java",
R"__(package fix.sm12.empty;

import android.app.Activity;

public class Main extends Activity {
}
)__"},
    {"expected.json", expected({})},
  }});

  return all;
}

struct ExpectedFinding {
  std::string smell;
  std::string file;
  int line = 0;
  int column = 0;
  std::string confidence;

  std::string str() const {
    return smell + " " + file + ":" + std::to_string(line) + ":" +
           std::to_string(column) + " " + confidence;
  }
};

std::vector<ExpectedFinding> parse_expected(const std::string& content) {
  nlohmann::json doc = nlohmann::json::parse(content);
  std::vector<ExpectedFinding> out;
  for (const auto& j : doc.at("findings")) {
    ExpectedFinding e;
    e.smell = j.at("smell").get<std::string>();
    e.file = j.at("file").get<std::string>();
    e.line = j.at("line").get<int>();
    e.column = j.at("column").get<int>();
    e.confidence = j.at("confidence").get<std::string>();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> kCorpus = build_corpus();
  return kCorpus;
}

void materialize(const fs::path& dir) {
  for (const Fixture& fixture : corpus()) {
    for (const FixtureFile& file : fixture.files) {
      fs::path target = dir / fixture.name / file.relative_path;
      fs::create_directories(target.parent_path());
      std::ofstream out(target, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write fixture file " + target.string());
      }
      out << file.content;
    }
  }
}

static SelfCheckResult check_one(const std::string& name,
                                 const fs::path& project,
                                 const std::string& expected_content) {
  SelfCheckResult result;
  result.fixture = name;
  try {
    std::vector<std::string> want;
    for (const ExpectedFinding& e : parse_expected(expected_content)) {
      want.push_back(e.str());
    }
    AppModel app = build_app_model(project);
    std::vector<std::string> got;
    for (const Finding& f : run_all(app, DetectorConfig{})) {
      got.push_back(std::string(smell_id(f.smell)) + " " + f.location.file +
                    ":" + std::to_string(f.location.line) + ":" +
                    std::to_string(f.location.column) + " " +
                    std::string(confidence_id(f.confidence)));
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want == got) {
      result.passed = true;
    } else {
      std::ostringstream detail;
      for (const std::string& w : want) {
        if (!std::count(got.begin(), got.end(), w))
          detail << "missing [" << w << "] ";
      }
      for (const std::string& g : got) {
        if (!std::count(want.begin(), want.end(), g))
          detail << "unexpected [" << g << "] ";
      }
      result.detail = detail.str();
    }
  } catch (const std::exception& e) {
    result.detail = std::string("error: ") + e.what();
  }
  return result;
}

std::vector<SelfCheckResult> self_check() {
  fs::path tmp =
      fs::temp_directory_path() /
      ("iccsmell-selfcheck-" +
       std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  materialize(tmp);

  std::vector<SelfCheckResult> results;
  for (const Fixture& fixture : corpus()) {
    std::string expected_content;
    for (const FixtureFile& file : fixture.files) {
      if (file.relative_path == "expected.json") expected_content = file.content;
    }
    results.push_back(
        check_one(fixture.name, tmp / fixture.name, expected_content));
  }

  std::error_code ec;
  fs::remove_all(tmp, ec);
  return results;
}

std::vector<SelfCheckResult> self_check_dir(const fs::path& dir) {
  std::vector<fs::path> projects;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "expected.json")) {
      projects.push_back(entry.path());
    }
  }
  std::sort(projects.begin(), projects.end());

  std::vector<SelfCheckResult> results;
  for (const fs::path& project : projects) {
    std::ifstream in(project / "expected.json", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    results.push_back(
        check_one(project.filename().string(), project, buf.str()));
  }
  return results;
}

}  // namespace iccsmell::fixtures
