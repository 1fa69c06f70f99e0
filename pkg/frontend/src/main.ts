/** Browser bootstrap: pick a vocabulary and algorithm, then run the app. */

import { AssistantClient } from "./api.js";
import { createApp } from "./app.js";

function serviceBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? "http://127.0.0.1:8000";
}

async function boot(): Promise<void> {
  const rootHost = document.getElementById("app");
  if (!rootHost) return;
  const client = new AssistantClient(serviceBase());

  const picker = document.createElement("div");
  picker.id = "picker";
  const vocabSel = document.createElement("select");
  vocabSel.id = "pick-vocab";
  const algoSel = document.createElement("select");
  algoSel.id = "pick-algo";
  for (const a of ["greedy", "clique"]) {
    const o = document.createElement("option");
    o.value = a;
    o.textContent = a;
    algoSel.append(o);
  }
  const startBtn = document.createElement("button");
  startBtn.textContent = "Start";
  picker.append(vocabSel, algoSel, startBtn);
  rootHost.append(picker);

  const appRoot = document.createElement("div");
  rootHost.append(appRoot);
  const app = createApp(appRoot, client);

  try {
    for (const v of await client.vocabularies()) {
      const o = document.createElement("option");
      o.value = v.id;
      o.textContent = `${v.id} (${v.word_count} words of ${v.word_length})`;
      vocabSel.append(o);
    }
  } catch (e) {
    appRoot.textContent = `cannot reach service at ${client.baseUrl}: ${e}`;
    return;
  }

  startBtn.addEventListener("click", () => {
    void app.start({
      vocabulary: vocabSel.value,
      algorithm: algoSel.value as "greedy" | "clique",
    });
  });
}

void boot();
