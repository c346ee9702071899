/**
 * Browser entry point: read the URL fragment into the initial state, mount
 * the console, and keep the fragment and state in sync both ways.
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { StateStore, fromFragment, toFragment } from "./state.js";

declare global {
  interface Window {
    /** Optional API origin override; same-origin by default. */
    MEDIAWATCH_API?: string;
  }
}

const api = new ApiClient(window.MEDIAWATCH_API ?? "");
const store = new StateStore(fromFragment(location.hash));
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
const app = new App(root, api, store);

window.addEventListener("hashchange", () => {
  const fromUrl = fromFragment(location.hash);
  if (toFragment(fromUrl) !== toFragment(store.get())) {
    store.replace(fromUrl);
  }
});

void app.start();
