/** Application shell: navigation and the play loop. */

import { Api } from "./api.js";
import { clear, el } from "./dom.js";
import { renderLeaderboard } from "./leaderboard.js";
import { renderTask1 } from "./task1.js";
import { renderTask2 } from "./task2.js";

export interface App {
  play(): Promise<void>;
  showLeaderboard(): Promise<void>;
}

export function createApp(root: HTMLElement, api: Api): App {
  const toast = el("p", { id: "toast", class: "toast", hidden: "" });
  const view = el("main", { id: "view" });
  const playButton = el("button", { id: "nav-play" }, "Play");
  const boardButton = el("button", { id: "nav-leaderboard" }, "Leaderboard");

  const showToast = (message: string) => {
    toast.textContent = message;
    toast.removeAttribute("hidden");
  };

  const play = async (): Promise<void> => {
    let task;
    try {
      task = await api.getTask();
    } catch (err) {
      clear(view);
      view.append(el("p", { class: "error" }, "No tasks available right now."));
      return;
    }
    if (task.task === "unfun") {
      renderTask1(view, api, task, () => {
        showToast("Rewrite submitted - it earns points as ratings come in.");
        void play();
      });
    } else {
      renderTask2(view, api, task, (reward) => {
        showToast(`You earned ${reward.toFixed(0)} points!`);
        void play();
      });
    }
  };

  const showLeaderboard = async (): Promise<void> => {
    await renderLeaderboard(view, api);
  };

  // The toast survives the auto-advance to the next task; user navigation
  // dismisses it.
  playButton.addEventListener("click", () => {
    toast.setAttribute("hidden", "");
    void play();
  });
  boardButton.addEventListener("click", () => {
    toast.setAttribute("hidden", "");
    void showLeaderboard();
  });

  clear(root);
  root.append(
    el("header", {},
       el("h1", {}, "unfun"),
       el("nav", {}, playButton, boardButton)),
    toast,
    view,
  );
  return { play, showLeaderboard };
}

// Browser entry point; tests import createApp directly instead.
if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = createApp(document.getElementById("app") as HTMLElement, new Api());
  void app.play();
}
