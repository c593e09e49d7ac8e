/** Browser entry point: boot the demo against the same-origin service. */
import { HttpApi } from "./api.js";
import { App } from "./app.js";

async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const api = new HttpApi("");
  const app = await App.boot({ api, root });

  const exportButton = document.getElementById("export-session");
  exportButton?.addEventListener("click", async () => {
    const document_ = await app.exportDocument();
    const blob = new Blob([JSON.stringify(document_, null, 2)], {
      type: "application/json",
    });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "session.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });

  const importInput = document.getElementById("import-session");
  importInput?.addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    const text = await file.text();
    await api.importSession(JSON.parse(text));
    input.value = "";
    window.alert("session imported; it is now available through the API");
  });
}

start().catch((error) => console.error(error));
