import type { Api, Challenge, MoodInfo } from '../api';
import { ApiError } from '../api';
import { el, clear } from '../dom';
import { moodPicker } from './moodPicker';

// Game loop: show a vision with no mood anywhere, let the player pick one,
// then reveal the outcome (actual mood, points, running score and streak).
export function guessingView(
  root: HTMLElement,
  api: Api,
  scenarioId: string,
  catalog: MoodInfo[],
  onExit: () => void,
): void {
  const container = el('section', { class: 'guessing-view' });
  clear(root).append(container);

  async function loadChallenge(): Promise<void> {
    clear(container);
    let challenge: Challenge;
    try {
      challenge = await api.nextChallenge(scenarioId);
    } catch (error) {
      if (error instanceof ApiError && error.code === 'no_eligible_visions') {
        renderEndOfPool();
        return;
      }
      container.append(el('p', { class: 'error', text: (error as Error).message }));
      return;
    }
    renderChallenge(challenge);
  }

  function renderEndOfPool(): void {
    clear(container).append(
      el('div', { class: 'end-of-pool' },
        el('h2', { text: 'All caught up!' }),
        el('p', { text: 'You have guessed every vision available to you in this scenario.' }),
        el('button', { type: 'button', class: 'back-to-feed', text: 'Back to the feed', onclick: onExit }),
      ),
    );
  }

  function renderChallenge(challenge: Challenge): void {
    const picker = moodPicker(catalog, (mood) => {
      void submit(challenge, mood);
    });
    clear(container).append(
      el('h2', { text: 'How did this person feel?' }),
      el('figure', { class: 'challenge-card' },
        el('img', { src: challenge.image.source_url, alt: challenge.caption }),
        el('figcaption', {},
          el('span', { class: 'challenge-caption', text: challenge.caption }),
          el('span', { class: 'attribution', text: challenge.image.attribution }),
        ),
      ),
      picker.element,
    );
  }

  async function submit(challenge: Challenge, mood: string): Promise<void> {
    try {
      const result = await api.submitGuess(challenge.vision_id, mood);
      clear(container).append(
        el('div', { class: `guess-feedback ${result.correct ? 'correct' : 'incorrect'}` },
          el('h2', { text: result.correct ? 'Spot on!' : 'Not quite.' }),
          el('p', {},
            'They actually felt ',
            el('strong', { class: 'actual-mood', text: result.actual_mood }),
            '.',
          ),
          el('p', { class: 'points-awarded', text: `+${result.points_awarded}` }),
          el('p', { class: 'running-stats',
            text:
              `score ${result.updated_stats.total_points}` +
              ` · streak ${result.updated_stats.current_streak}` +
              ` · guesses ${result.updated_stats.guesses_made}`,
          }),
          el('button', { type: 'button', class: 'next-challenge primary', text: 'Next',
            onclick: () => void loadChallenge() }),
        ),
      );
    } catch (error) {
      if (error instanceof ApiError && error.code === 'duplicate_guess') {
        void loadChallenge(); // already answered elsewhere: fetch a fresh one
        return;
      }
      container.append(el('p', { class: 'error', text: (error as Error).message }));
    }
  }

  void loadChallenge();
}
