#!/usr/bin/env python3
# Copyright 2026 The apisum Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/fixture/Posts.xml, the small hand-written dump used by
the integration and acceptance tests."""
import json
import os
from xml.sax.saxutils import quoteattr

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data", "fixture")

Q, A = 1, 2
posts = [
    # id, type, parent, score, tags, body
    (10, Q, None, 12, "<android><android-activity>",
     "<p>When is onCreate called in the activity lifecycle? I see <code>onCreate(savedInstanceState)</code> in every example. "
     "What should go there?</p>"),
    (11, A, 10, 25, None,
     "<p>The system calls <code>onCreate(Bundle)</code> when the activity is first created. "
     "You should call <code>setContentView()</code> and initialize your views in it. "
     "The bundle holds the state saved by a previous instance. It is null on a fresh start.</p>"
     "<pre><code>protected void onCreate(Bundle b) {\n  super.onCreate(b);\n}</code></pre>"),
    (12, A, 10, 7, None,
     "<p>Think of it as the constructor of the screen. Override <code>onCreate(Bundle)</code> to inflate the layout. "
     "Always call <code>super.onCreate(savedInstanceState)</code> first. "
     "Heavy work should not run in onCreate because it blocks the UI thread.</p>"),
    (13, A, 10, 2, None,
     "<p>Low scored answer. It mentions <code>onCreate(b)</code> but should be ignored.</p>"),
    (14, A, 10, 4, None,
     "<p>The lifecycle starts here. Its <code>onCreate(Bundle)</code> runs once per instance, e.g. after a rotation the activity is recreated. "
     "Restore state from the bundle when it is not null.</p>"),
    (20, Q, None, 9, "<android><java>",
     "<p>How do I close an activity from code? Calling <code>finish()</code> seems to work. Is it safe?</p>"),
    (21, A, 20, 15, None,
     "<p>Call <code>finish()</code> when the activity is done and should be closed. "
     "The system then destroys the activity and calls onDestroy. "
     "The previous activity on the back stack is resumed.</p>"),
    (22, A, 20, 5, None,
     "<p>Use <code>finish()</code> after starting the next activity if the user must not come back. "
     "Note that finish does not stop the code that follows it. Return from the method right after the call.</p>"),
    (23, A, 20, 3, None,
     "<p>Pressing the back button has the same effect. "
     "Internally <code>onBackPressed()</code> calls <code>finish()</code> by default. Override it to change that.</p>"),
    (30, Q, None, 30, "<android><android-asynctask>",
     "<p>How do I update the UI after <code>doInBackground()</code> finishes? I want to show the result in a TextView.</p>"),
    (31, A, 30, 40, None,
     "<p>Override <code>onPostExecute(Result)</code> in your AsyncTask. "
     "It runs on the UI thread after the background computation finishes. "
     "The value returned by doInBackground is passed to it as a parameter. "
     "Update your views there.</p>"),
    (32, A, 30, 11, None,
     "<p>The framework invokes <code>onPostExecute(result)</code> on the main thread. "
     "Never call it yourself. "
     "If the task is cancelled, onCancelled is called instead of it.</p>"),
    (33, A, 30, 6, None,
     "<p>Be careful with leaks. The activity may be gone when <code>onPostExecute(r)</code> runs, so check that it is still alive before touching views.</p>"),
    (40, Q, None, 5, "<android>",
     "<p>Is <code>onStop()</code> always called?</p>"),
    (41, A, 40, 1, None,
     "<p>Usually yes. <code>onStop()</code> is called when the activity is no longer visible.</p>"),
    (42, A, 40, 2, None,
     "<p>Not on process death. Do not rely on <code>onStop()</code> for saving data.</p>"),
    # Out of the android tag: dropped.
    (50, Q, None, 50, "<ios><swift>",
     "<p>How do I call <code>viewDidLoad()</code>? Like <code>onCreate(b)</code> on android.</p>"),
    (51, A, 50, 60, None,
     "<p>The system calls <code>viewDidLoad()</code>. It is similar to <code>onCreate(Bundle)</code>.</p>"),
]

def row(p):
    pid, ptype, parent, score, tags, body = p
    attrs = [("Id", str(pid)), ("PostTypeId", str(ptype))]
    if parent is not None:
        attrs.append(("ParentId", str(parent)))
    attrs += [("CreationDate", "2019-0%d-1%dT10:00:00.000" % (1 + pid % 9, pid % 10)),
              ("Score", str(score)), ("Body", body)]
    if tags:
        attrs.append(("Tags", tags))
    return "  <row " + " ".join(f"{k}={quoteattr(v)}" for k, v in attrs) + " />"

lines = ['<?xml version="1.0" encoding="utf-8"?>', "<posts>"]
for p in posts:
    lines.append(row(p))
    if p[0] == 23:
        # Tag wiki excerpt (PostTypeId=4): out of domain.
        lines.append('  <row Id="24" PostTypeId="4" Score="0" Body="&lt;p&gt;Android is an OS.&lt;/p&gt;" />')
    if p[0] == 33:
        # Answer whose parent is not in the dump.
        lines.append('  <row Id="34" PostTypeId="2" ParentId="999" Score="8" Body="&lt;p&gt;Orphan &lt;code&gt;finish()&lt;/code&gt;.&lt;/p&gt;" />')
        # Broken row: unterminated attribute value.
        lines.append('  <row Id="35" PostTypeId="2" ParentId="30" Score="4 Body="x" />')
lines.append("</posts>")
os.makedirs(OUT, exist_ok=True)
with open(os.path.join(OUT, "Posts.xml"), "w") as f:
    f.write("\n".join(lines) + "\n")

oracle = {
    "activity.onCreate": "onCreate is called when the activity is first created. Override it to call setContentView and initialize the views. The bundle contains the saved state of a previous instance and is null on a fresh start. Always call super.onCreate first.",
    "activity.finish": "Call finish when the activity is done and should be closed. The system destroys the activity and resumes the previous activity on the back stack. finish does not stop the code that follows it.",
    "asyncTask.onPostExecute": "onPostExecute runs on the UI thread after doInBackground finishes. The result of the background computation is passed to it as a parameter, so update the views there. Do not call it yourself.",
    "activity.onStop": "onStop is called when the activity is no longer visible to the user.",
}
with open(os.path.join(OUT, "oracle.json"), "w") as f:
    json.dump(oracle, f, indent=2, sort_keys=True)
    f.write("\n")

with open(os.path.join(OUT, "registry.json"), "w") as f:
    reg = [{"canonical_name": n, "match_patterns": [n.split(".")[1] + "("]}
           for n in ["activity.finish", "activity.onCreate", "activity.onStop", "asyncTask.onPostExecute"]]
    json.dump(reg, f, indent=2)
    f.write("\n")
