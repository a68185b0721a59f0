import type { UiConfig } from './types'

export interface SynthesisResponse {
  url: string
  cached: boolean
  synthesis_ms: number
  audio_duration_ms: number
}

export class GatewayError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string
  ) {
    super(message)
  }
}

export async function sendText(config: UiConfig, text: string, voice: string): Promise<SynthesisResponse> {
  const res = await fetch(`${config.gatewayBaseUrl}/v1/tts/sync`, {
    method: 'POST',
    headers: {
      'content-type': 'application/json',
      'x-api-key': config.apiKey
    },
    body: JSON.stringify({ text, voice })
  })
  if (!res.ok) {
    let code = 'error'
    let message = `HTTP ${res.status}`
    try {
      const body = await res.json()
      if (typeof body.error === 'string') code = body.error
      if (typeof body.message === 'string') message = body.message
    } catch {
      // non-JSON error body; keep the status-derived message
    }
    throw new GatewayError(res.status, code, message)
  }
  return res.json()
}

// Browser audio elements cannot attach headers, so the gateway accepts the
// api key as a query parameter on /audio/* paths. Without a key the URL is
// used as returned.
export function audioSrc(config: UiConfig, url: string): string {
  if (!config.apiKey) return url
  const sep = url.includes('?') ? '&' : '?'
  return `${url}${sep}api_key=${encodeURIComponent(config.apiKey)}`
}
