/** Leaderboard view: top players by total reward. */

import { Api, LeaderboardEntry } from "./api.js";
import { clear, el } from "./dom.js";

function renderRows(tbody: HTMLElement, entries: LeaderboardEntry[]): void {
  clear(tbody);
  entries.forEach((entry, index) => {
    tbody.append(
      el("tr", {},
         el("td", {}, String(index + 1)),
         el("td", {}, entry.player_id),
         el("td", {}, entry.total_reward.toFixed(0)),
         el("td", {}, entry.unfun_reward.toFixed(0)),
         el("td", {}, entry.rating_reward.toFixed(0))),
    );
  });
}

export async function renderLeaderboard(root: HTMLElement, api: Api): Promise<void> {
  clear(root);
  const empty = el("p", { id: "leaderboard-empty", hidden: "" }, "Nobody has scored yet.");
  const tbody = el("tbody", { id: "leaderboard-body" });
  const table = el("table", { id: "leaderboard" },
    el("thead", {},
       el("tr", {},
          el("th", {}, "#"), el("th", {}, "Player"), el("th", {}, "Total"),
          el("th", {}, "Unfun"), el("th", {}, "Rating"))),
    tbody,
  );
  const refresh = el("button", { id: "refresh-leaderboard" }, "Refresh");

  const load = async () => {
    const entries = await api.leaderboard();
    if (entries.length === 0) {
      empty.removeAttribute("hidden");
      table.setAttribute("hidden", "");
    } else {
      empty.setAttribute("hidden", "");
      table.removeAttribute("hidden");
      renderRows(tbody, entries);
    }
  };
  refresh.addEventListener("click", load);

  root.append(el("h2", {}, "Leaderboard"), empty, table, refresh);
  await load();
}
